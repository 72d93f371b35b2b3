#include "msns/commands.hpp"

int main(int argc, char** argv) { return msns::cli_main(argc, argv); }
