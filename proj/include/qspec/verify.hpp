#pragma once

#include "qspec/descriptor.hpp"

namespace qspec {

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | unknown
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::string instance;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool anyFail() const;
  bool anyUnknown() const;
  u64 countStatus(const std::string& s) const;
};

struct SuiteOptions {
  std::string ring;    // ring shorthand; suites pick a default when empty
  std::string scheme;  // scheme shorthand
  int bound = 3;
  u64 seed = 0;
};

std::vector<std::string> suiteNames();
VerifyReport runSuite(const std::string& suite, const SuiteOptions& opt);

std::string reportToJson(const VerifyReport& r);

}  // namespace qspec
