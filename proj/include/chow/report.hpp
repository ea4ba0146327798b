#pragma once

#include <optional>
#include <string>
#include <vector>

namespace chow {

inline constexpr const char* kReportSchema = "chowlab-report/1";

enum class Status { pass, fail, skip };

const char* status_name(Status s);

struct CheckRecord {
  std::string suite;
  std::string anchor;  // the identity being checked
  std::string params;
  Status status = Status::pass;
  std::optional<std::string> counterexample;
};

class Report {
 public:
  void add(CheckRecord r) { records_.push_back(std::move(r)); }
  void add(const std::string& suite, const std::string& anchor, const std::string& params, bool ok,
           std::optional<std::string> counterexample = std::nullopt);
  void merge(const Report& other);

  /// Sorted by (suite, anchor, params).
  std::vector<CheckRecord> records() const;
  std::size_t count(Status s) const;
  bool all_passed() const { return count(Status::fail) == 0; }

  std::string to_json(int g) const;
  std::string to_table() const;

 private:
  std::vector<CheckRecord> records_;
};

}  // namespace chow
