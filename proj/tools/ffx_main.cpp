#include "ffx/cli.hpp"

int main(int argc, char** argv) { return ffx::cli::run_main(argc, argv); }
