#include <saltice/cli.hpp>

int main(int argc, char** argv) { return saltice::cli::dispatch(argc, argv); }
