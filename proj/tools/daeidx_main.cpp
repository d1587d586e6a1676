#include "daeidx/cli.hpp"

int main(int argc, char** argv) { return daeidx::run_cli(argc, argv); }
