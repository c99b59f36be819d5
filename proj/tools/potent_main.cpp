#include "potent/cli.hpp"

int main(int argc, char** argv) { return potent::run_cli(argc, argv); }
