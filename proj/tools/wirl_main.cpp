#include "wirl/cli/commands.hpp"

int main(int argc, char** argv) {
    return wirl::cli::run_cli(argc, argv);
}
