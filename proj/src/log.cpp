#include "wigsim/log.hpp"

#include <cstdio>

namespace wigsim {

void log_warn(const std::string& msg) {
    std::fprintf(stderr, "[warn] %s\n", msg.c_str());
}

}  // namespace wigsim
