#include "holonomy/cli.hpp"

int main(int argc, char** argv) { return holonomy::run_cli(argc, argv); }
