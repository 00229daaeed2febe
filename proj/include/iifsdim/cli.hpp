#pragma once

#include <string>
#include <vector>

namespace iifsdim {

// Dispatch for the iifs-dim tool. Exit codes: 0 success, 2 usage error,
// 1 computation error.
int run(const std::vector<std::string>& args);

}  // namespace iifsdim
