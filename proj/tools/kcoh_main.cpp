#include "kcoh/cli.hpp"

int main(int argc, char** argv) { return kcoh::cli_main(argc, argv); }
