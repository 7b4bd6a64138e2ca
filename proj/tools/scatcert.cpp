#include "scatcert/cli.hpp"

int main(int argc, char** argv) { return scatcert::run_cli(argc, argv); }
