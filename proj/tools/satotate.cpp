#include "satotate/cli.hpp"

int main(int argc, char** argv) { return satotate::cli::main(argc, argv); }
