#include "copreg/cli.hpp"

int main(int argc, char** argv) { return copreg::cli_main(argc, argv); }
