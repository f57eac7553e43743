#include <cstdio>
#include <string>
#include <vector>

#include "galstat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    galstat::CliResult result = galstat::run_cli(args);
    std::fputs(result.output.c_str(), stdout);
    return result.exit_code;
}
