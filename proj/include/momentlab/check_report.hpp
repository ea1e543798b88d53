#pragma once

#include <string>
#include <vector>

namespace momentlab {

enum class CheckStatus { Pass, Fail, NotApplicable, Info };

const char* to_string(CheckStatus status);

struct CheckItem {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double value = 0;  // the quantity the check compared, when there is one
  std::string detail;
};

/// Ordered list of named numerical checks. A report passes when no item failed;
/// NotApplicable and Info items never fail it.
struct CheckReport {
  std::string name;
  std::vector<CheckItem> items;

  void check(std::string item, bool ok, double value, std::string detail = {});
  void skip(std::string item, std::string detail);
  void info(std::string item, double value, std::string detail = {});

  bool passed() const;
  const CheckItem* first_failure() const;
  const CheckItem* find(const std::string& item) const;
  /// One line per item: "  [PASS] name value=... detail".
  std::string format() const;
};

}  // namespace momentlab
