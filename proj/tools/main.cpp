#include "oposhg/cli.hpp"

int main(int argc, char** argv) { return oposhg::dispatch(argc, argv); }
