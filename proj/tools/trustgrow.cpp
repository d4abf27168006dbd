#include "commands.hpp"

int main(int argc, char** argv) { return trustgrow::cli::run(argc, argv); }
