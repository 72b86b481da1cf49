#include "soscert/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return soscert::dispatch(std::move(args), std::cout, std::cerr);
}
