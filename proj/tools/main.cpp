// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "gratingpml/cli.hpp"

int main(int argc, char **argv)
{
  return gratingpml::run_cli(argc, argv, std::cout, std::cerr);
}
