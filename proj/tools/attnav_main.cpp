#include <string>
#include <vector>

#include "attnav/cli.hpp"

int main(int argc, char** argv) {
    return attnav::run_subcommand(std::vector<std::string>(argv + 1, argv + argc));
}
