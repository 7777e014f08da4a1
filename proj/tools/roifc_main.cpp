#include "roifc/cli.hpp"

int main(int argc, char** argv) { return roifc::run_cli(argc, argv); }
