#pragma once

#include <string>

namespace wigsim {

// Warnings go to stderr so they never contaminate machine-readable stdout.
void log_warn(const std::string& msg);

}  // namespace wigsim
