#include "dppt/cli.hpp"

int main(int argc, char** argv) { return dppt::run_cli(argc, argv); }
