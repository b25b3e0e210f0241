#include "xnf/cli.hpp"

int main(int argc, char** argv) { return xnf::cli_main(argc, argv); }
