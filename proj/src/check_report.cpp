#include "momentlab/check_report.hpp"

#include <algorithm>
#include <cstdio>

namespace momentlab {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::NotApplicable: return "N/A";
    case CheckStatus::Info: return "INFO";
  }
  return "?";
}

void CheckReport::check(std::string item, bool ok, double value, std::string detail) {
  items.push_back({std::move(item), ok ? CheckStatus::Pass : CheckStatus::Fail, value, std::move(detail)});
}

void CheckReport::skip(std::string item, std::string detail) {
  items.push_back({std::move(item), CheckStatus::NotApplicable, 0.0, std::move(detail)});
}

void CheckReport::info(std::string item, double value, std::string detail) {
  items.push_back({std::move(item), CheckStatus::Info, value, std::move(detail)});
}

bool CheckReport::passed() const { return first_failure() == nullptr; }

const CheckItem* CheckReport::first_failure() const {
  auto it = std::find_if(items.begin(), items.end(), [](const CheckItem& c) { return c.status == CheckStatus::Fail; });
  return it == items.end() ? nullptr : &*it;
}

const CheckItem* CheckReport::find(const std::string& item) const {
  auto it = std::find_if(items.begin(), items.end(), [&](const CheckItem& c) { return c.name == item; });
  return it == items.end() ? nullptr : &*it;
}

std::string CheckReport::format() const {
  std::string out;
  char buf[64];
  for (const auto& c : items) {
    std::snprintf(buf, sizeof buf, "%.9g", c.value);
    out += "  [" + std::string(to_string(c.status)) + "] " + c.name;
    if (c.status != CheckStatus::NotApplicable) out += " value=" + std::string(buf);
    if (!c.detail.empty()) out += "  " + c.detail;
    out += '\n';
  }
  return out;
}

}  // namespace momentlab
