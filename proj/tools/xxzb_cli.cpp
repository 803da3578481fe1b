#include "xxzb/suites.hpp"

int main(int argc, char** argv) { return xxzb::run_cli(argc, argv); }
