/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <iostream>

#include "hyqa/cli.hpp"

int main(int argc, char** argv) { return hyqa::main_entry(argc, argv, std::cout, std::cerr); }
