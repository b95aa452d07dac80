#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "procflow/errors.hpp"
#include "procflow/hytime.hpp"
#include "procflow/value.hpp"

namespace procflow {

enum class TraceKind { Output, Transition, ProcessTransition, TopologyChange };

inline const char* to_string(TraceKind k) {
  switch (k) {
    case TraceKind::Output: return "output";
    case TraceKind::Transition: return "transition";
    case TraceKind::ProcessTransition: return "process-transition";
    case TraceKind::TopologyChange: return "topology-change";
  }
  return "?";
}

inline TraceKind trace_kind_from(const std::string& s) {
  if (s == "output") return TraceKind::Output;
  if (s == "transition") return TraceKind::Transition;
  if (s == "process-transition") return TraceKind::ProcessTransition;
  if (s == "topology-change") return TraceKind::TopologyChange;
  throw ConfigError("unknown trace kind: " + s);
}

/// One observable event of a run. Records are produced in nondecreasing
/// HyTime order.
struct TraceRecord {
  HyTime time;
  std::string path;
  TraceKind kind = TraceKind::Output;
  Value payload;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// JSON-lines form, fields in fixed order: t, eps, path, kind, payload.
inline std::string jsonl_line(const TraceRecord& r) {
  nlohmann::ordered_json j;
  if (r.time.is_infinite()) {
    j["t"] = "inf";
  } else {
    j["t"] = r.time.real;
  }
  j["eps"] = r.time.eps;
  j["path"] = r.path;
  j["kind"] = to_string(r.kind);
  j["payload"] = r.payload;
  return j.dump();
}

inline TraceRecord parse_jsonl_line(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  TraceRecord r;
  r.time = j.is_object() && j.at("t").is_string()
               ? HyTime::infinity()
               : HyTime(j.at("t").get<double>(), j.at("eps").get<std::int64_t>());
  r.path = j.at("path").get<std::string>();
  r.kind = trace_kind_from(j.at("kind").get<std::string>());
  r.payload = j.at("payload");
  return r;
}

inline std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

/// CSV form, same columns as JSONL; the payload column is JSON-escaped.
inline std::string csv_line(const TraceRecord& r) {
  std::string t = r.time.is_infinite() ? "inf" : Value(r.time.real).dump();
  return t + "," + std::to_string(r.time.eps) + "," + csv_escape(r.path) +
         "," + to_string(r.kind) + "," + csv_escape(r.payload.dump());
}

inline const char* csv_header() { return "t,eps,path,kind,payload"; }

/// Append-only consumer of trace records.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void push(const TraceRecord& r) = 0;
  /// Blocks until all pushed records are handed to the final destination.
  virtual void flush() {}
};

class MemorySink final : public TraceSink {
 public:
  void push(const TraceRecord& r) override { records_.push_back(r); }
  const std::vector<TraceRecord>& records() const { return records_; }

 private:
  std::vector<TraceRecord> records_;
};

class JsonlSink final : public TraceSink {
 public:
  explicit JsonlSink(std::ostream& out) : out_(out) {}
  void push(const TraceRecord& r) override { out_ << jsonl_line(r) << '\n'; }
  void flush() override { out_.flush(); }

 private:
  std::ostream& out_;
};

class CsvSink final : public TraceSink {
 public:
  explicit CsvSink(std::ostream& out) : out_(out) {
    out_ << csv_header() << '\n';
  }
  void push(const TraceRecord& r) override { out_ << csv_line(r) << '\n'; }
  void flush() override { out_.flush(); }

 private:
  std::ostream& out_;
};

/// FIFO channel handing records to a consumer thread. Order is preserved;
/// flush() drains the queue before returning.
class ThreadedSink final : public TraceSink {
 public:
  explicit ThreadedSink(TraceSink& inner) : inner_(inner) {
    worker_ = std::thread([this] { run(); });
  }

  ~ThreadedSink() override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      done_ = true;
    }
    cv_.notify_all();
    worker_.join();
  }

  void push(const TraceRecord& r) override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      queue_.push_back(r);
    }
    cv_.notify_one();
  }

  void flush() override {
    std::unique_lock<std::mutex> lock(mu_);
    drained_.wait(lock, [this] { return queue_.empty() && !busy_; });
    inner_.flush();
  }

 private:
  void run() {
    std::unique_lock<std::mutex> lock(mu_);
    for (;;) {
      cv_.wait(lock, [this] { return done_ || !queue_.empty(); });
      if (queue_.empty() && done_) return;
      while (!queue_.empty()) {
        TraceRecord r = std::move(queue_.front());
        queue_.pop_front();
        busy_ = true;
        lock.unlock();
        inner_.push(r);
        lock.lock();
        busy_ = false;
      }
      drained_.notify_all();
    }
  }

  TraceSink& inner_;
  std::deque<TraceRecord> queue_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable drained_;
  bool done_ = false;
  bool busy_ = false;
  std::thread worker_;
};

}  // namespace procflow
