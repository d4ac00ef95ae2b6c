#include "cli.hpp"

int main(int argc, char** argv) { return liftlab::cli::dispatch(argc, argv); }
