// SPDX-License-Identifier: Apache-2.0
#include "graviphoton/cli.hpp"

int main(int argc, char** argv) { return graviphoton::cli::main(argc, argv); }
