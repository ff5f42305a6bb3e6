#pragma once

// Append-only event log for phased constructions, written as JSON lines.

#include <string>
#include <vector>

#include <json.hpp>

#include "ctop/kernel.hpp"

namespace ctop {

struct StageEvent {
  Nat stage = 0;
  std::string event;
  nlohmann::ordered_json data;

  friend bool operator==(const StageEvent& a, const StageEvent& b) {
    return a.stage == b.stage && a.event == b.event && a.data == b.data;
  }
};

class StageLog {
 public:
  void append(Nat stage, std::string event, nlohmann::ordered_json data = nlohmann::ordered_json::object()) {
    events_.push_back({stage, std::move(event), std::move(data)});
  }

  const std::vector<StageEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  /// Events named `event`, in order.
  std::vector<StageEvent> select(const std::string& event) const {
    std::vector<StageEvent> out;
    for (const auto& e : events_)
      if (e.event == event) out.push_back(e);
    return out;
  }

  std::string to_jsonl() const {
    std::string out;
    for (const auto& e : events_) {
      nlohmann::ordered_json line;
      line["stage"] = e.stage;
      line["event"] = e.event;
      line["data"] = e.data;
      out += line.dump() + "\n";
    }
    return out;
  }

  static StageLog from_jsonl(const std::string& text) {
    StageLog log;
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      const std::string line = text.substr(start, end - start);
      start = end + 1;
      if (line.empty()) continue;
      try {
        const auto j = nlohmann::ordered_json::parse(line);
        log.append(j.at("stage").get<Nat>(), j.at("event").get<std::string>(), j.at("data"));
      } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("stage log: ") + ex.what());
      }
    }
    return log;
  }

  friend bool operator==(const StageLog&, const StageLog&) = default;

 private:
  std::vector<StageEvent> events_;
};

}  // namespace ctop
