#include "cli.hpp"

int main(int argc, char** argv) { return nevpick::cli::run(argc, argv); }
