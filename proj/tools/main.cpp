#include <string>
#include <vector>

#include "iifsdim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return iifsdim::run(args);
}
