#include <string>
#include <vector>

#include "facefuse/cli.hpp"

int main(int argc, char** argv) {
    return facefuse::run_cli(std::vector<std::string>(argv, argv + argc));
}
