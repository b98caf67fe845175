#include <string>
#include <vector>

#include "lrl/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return lrl::cli::run_cli(std::move(args));
}
