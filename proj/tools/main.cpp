#include "sgf/cli.hpp"

int main(int argc, char** argv) { return sgf::cli::dispatch(argc, argv); }
