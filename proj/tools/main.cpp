#include <vector>

#include "helns/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return helns::cli_dispatch(args);
}
