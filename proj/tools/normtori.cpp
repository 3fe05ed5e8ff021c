#include "normtori/cli.hpp"

int main(int argc, char** argv) { return normtori::cli::run(argc, argv); }
