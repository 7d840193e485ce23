// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_NUMFMT_HPP
#define GRATINGPML_NUMFMT_HPP

#include <charconv>
#include <string>

namespace gratingpml
{

// Locale-independent shortest-safe text for a double: 17 significant digits.
inline std::string format_double(double v)
{
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// Round-trip formatting, used where the text is read back (configs).
inline std::string format_roundtrip(double v)
{
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

}  // namespace gratingpml

#endif  // GRATINGPML_NUMFMT_HPP
