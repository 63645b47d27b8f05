#include "relq/cli.hpp"

int main(int argc, char** argv) { return relq::cli_main(argc, argv); }
