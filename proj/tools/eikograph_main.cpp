#include "eikograph/cli.hpp"

int main(int argc, char** argv) { return eikograph::run(argc, argv); }
