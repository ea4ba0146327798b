#include "chow/report.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace chow {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skip:
      return "skip";
  }
  return "?";
}

void Report::add(const std::string& suite, const std::string& anchor, const std::string& params, bool ok,
                 std::optional<std::string> counterexample) {
  CheckRecord r{suite, anchor, params, ok ? Status::pass : Status::fail, std::nullopt};
  if (!ok) r.counterexample = counterexample ? std::move(counterexample) : std::string("(no payload)");
  records_.push_back(std::move(r));
}

void Report::merge(const Report& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

std::vector<CheckRecord> Report::records() const {
  std::vector<CheckRecord> out = records_;
  std::stable_sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) {
    return std::tie(a.suite, a.anchor, a.params) < std::tie(b.suite, b.anchor, b.params);
  });
  return out;
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

std::string Report::to_json(int g) const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["g"] = g;
  auto& list = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records()) {
    nlohmann::ordered_json item;
    item["suite"] = r.suite;
    item["anchor"] = r.anchor;
    item["params"] = r.params;
    item["status"] = status_name(r.status);
    item["counterexample"] = r.counterexample ? nlohmann::ordered_json(*r.counterexample) : nlohmann::ordered_json();
    list.push_back(std::move(item));
  }
  j["summary"] = {{"pass", count(Status::pass)}, {"fail", count(Status::fail)}, {"skip", count(Status::skip)}};
  return j.dump(2) + "\n";
}

std::string Report::to_table() const {
  const auto rows = records();
  std::size_t w_suite = 5, w_anchor = 8;
  for (const auto& r : rows) {
    w_suite = std::max(w_suite, r.suite.size());
    w_anchor = std::max(w_anchor, r.anchor.size());
  }
  std::ostringstream out;
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  out << pad("suite", w_suite) << "  " << pad("check", w_anchor) << "  status  params\n";
  for (const auto& r : rows) {
    out << pad(r.suite, w_suite) << "  " << pad(r.anchor, w_anchor) << "  " << pad(status_name(r.status), 6) << "  "
        << r.params << "\n";
    if (r.counterexample) out << "    counterexample: " << *r.counterexample << "\n";
  }
  out << count(Status::pass) << " passed, " << count(Status::fail) << " failed, " << count(Status::skip)
      << " skipped\n";
  return out.str();
}

}  // namespace chow
