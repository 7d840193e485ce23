// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_CLI_HPP
#define GRATINGPML_CLI_HPP

#include <iosfwd>

namespace gratingpml
{

// Subcommands: solve, validate-flat, efficiency, pml-calibrate, mesh-info.
// Returns 0 on success, 2 on configuration or usage errors, 3 on numerical
// failures.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace gratingpml

#endif  // GRATINGPML_CLI_HPP
