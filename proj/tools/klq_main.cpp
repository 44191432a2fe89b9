// klq_main.cpp -- the klq command-line tool.

#include "klq/cli.hpp"

int main(int argc, char** argv) { return klq::cli_main(argc, argv); }
