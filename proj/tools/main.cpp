// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const wmod::cli::Invocation inv = wmod::cli::invoke(args);
    std::fputs(inv.out.c_str(), stdout);
    std::fputs(inv.err.c_str(), stderr);
    return inv.exit_code;
}
