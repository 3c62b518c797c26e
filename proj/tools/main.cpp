#include "erdim_cli.hpp"

int main(int argc, char** argv) {
    return erdim::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
