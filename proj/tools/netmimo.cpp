// SPDX-License-Identifier: Apache-2.0

#include "netmimo/harness.hpp"

int main(int argc, char** argv) { return netmimo::cli_main(argc, argv); }
