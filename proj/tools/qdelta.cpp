#include <qdelta/cli.hpp>

int main(int argc, char** argv) { return qdelta::cli::main(argc, argv); }
