// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gratingpml/errors.hpp"
#include "gratingpml/numfmt.hpp"

namespace gratingpml
{

namespace
{

std::string trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &v, int line)
{
  double out = 0.0;
  const char *end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(out))
  {
    throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" +
                      v + "'");
  }
  return out;
}

long parse_long(const std::string &key, const std::string &v, int line)
{
  long out = 0;
  const char *end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end)
  {
    throw ConfigError("line " + std::to_string(line) + ": '" + key +
                      "' expects an integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string &key, const std::string &v, int line)
{
  if (v == "true" || v == "1" || v == "yes")
  {
    return true;
  }
  if (v == "false" || v == "0" || v == "no")
  {
    return false;
  }
  throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects true or false");
}

void require(bool ok, const std::string &key, const std::string &what)
{
  if (!ok)
  {
    throw ConfigError(key + ": " + what);
  }
}

void validate(const RunConfig &c, bool have_omega, bool have_lambda, bool have_mu,
              bool have_theta)
{
  require(have_omega, "omega", "required in [wave]");
  require(have_lambda, "lambda", "required in [wave]");
  require(have_mu, "mu", "required in [wave]");
  require(have_theta, "theta_deg", "required in [wave]");
  require(c.wave.omega > 0.0, "omega", "must be positive");
  require(c.wave.mu > 0.0, "mu", "must be positive");
  require(c.wave.lambda + c.wave.mu > 0.0, "lambda", "must satisfy lambda + mu > 0");
  require(std::abs(c.wave.theta_deg) < 90.0, "theta_deg", "must satisfy |theta_deg| < 90");
  require(c.wave.period > 0.0, "period", "must be positive");
  require(c.grating.builtin.empty() != c.grating.profile.empty(), "builtin",
          "give exactly one of 'builtin' and 'profile' in [grating]");
  require(c.grating.builtin.empty() || c.grating.builtin == "flat" ||
            c.grating.builtin == "sharp",
          "builtin", "must be 'flat' or 'sharp'");
  require(c.pml.sigma_re >= 0.0, "sigma_re", "must be non-negative");
  require(c.pml.sigma_im >= 0.0, "sigma_im", "must be non-negative");
  require(c.pml.m >= 1, "m", "must be at least 1");
  require(!c.pml.delta || *c.pml.delta > 0.0, "delta", "must be positive");
  require(!c.pml.target_fhat || *c.pml.target_fhat > 0.0, "target_fhat", "must be positive");
  require(c.pml.delta_cap > 0.0, "delta_cap", "must be positive");
  require(c.adapt.tolerance > 0.0, "tolerance", "must be positive");
  require(c.adapt.tau > 0.0 && c.adapt.tau < 1.0, "tau", "must lie in (0, 1)");
  require(c.adapt.max_iters >= 1, "max_iters", "must be at least 1");
  require(c.adapt.max_dofs >= 1, "max_dofs", "must be at least 1");
  require(c.adapt.h0 > 0.0, "h0", "must be positive");
  require(c.adapt.n_max >= 0, "n_max", "must be non-negative");
  require(c.adapt.jump_flux == "weighted" || c.adapt.jump_flux == "literal", "jump_flux",
          "must be 'weighted' or 'literal'");
  require(!c.output.dir.empty(), "dir", "must not be empty");
}

}  // namespace

double RunConfig::target_fhat() const
{
  return pml.target_fhat ? *pml.target_fhat : 1e-8 / std::sqrt(wave.period);
}

RunConfig parse_config(const std::string &text)
{
  RunConfig c;
  c.grating.builtin.clear();
  bool omega = false, lambda = false, mu = false, theta = false;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;

  using Setter = std::function<void(const std::string &, int)>;
  const std::map<std::string, std::map<std::string, Setter>> keys = {
    {"wave",
     {{"omega", [&](auto &v, int l) { c.wave.omega = parse_double("omega", v, l); omega = true; }},
      {"lambda",
       [&](auto &v, int l) { c.wave.lambda = parse_double("lambda", v, l); lambda = true; }},
      {"mu", [&](auto &v, int l) { c.wave.mu = parse_double("mu", v, l); mu = true; }},
      {"theta_deg",
       [&](auto &v, int l) { c.wave.theta_deg = parse_double("theta_deg", v, l); theta = true; }},
      {"period", [&](auto &v, int l) { c.wave.period = parse_double("period", v, l); }},
      {"gamma_height",
       [&](auto &v, int l) { c.wave.gamma_height = parse_double("gamma_height", v, l); }}}},
    {"grating",
     {{"builtin", [&](auto &v, int) { c.grating.builtin = v; }},
      {"profile", [&](auto &v, int) { c.grating.profile = v; }}}},
    {"pml",
     {{"sigma_re", [&](auto &v, int l) { c.pml.sigma_re = parse_double("sigma_re", v, l); }},
      {"sigma_im", [&](auto &v, int l) { c.pml.sigma_im = parse_double("sigma_im", v, l); }},
      {"m", [&](auto &v, int l) { c.pml.m = static_cast<int>(parse_long("m", v, l)); }},
      {"delta", [&](auto &v, int l) { c.pml.delta = parse_double("delta", v, l); }},
      {"target_fhat",
       [&](auto &v, int l) { c.pml.target_fhat = parse_double("target_fhat", v, l); }},
      {"delta_cap", [&](auto &v, int l) { c.pml.delta_cap = parse_double("delta_cap", v, l); }}}},
    {"adapt",
     {{"tolerance",
       [&](auto &v, int l) { c.adapt.tolerance = parse_double("tolerance", v, l); }},
      {"tau", [&](auto &v, int l) { c.adapt.tau = parse_double("tau", v, l); }},
      {"max_iters",
       [&](auto &v, int l) { c.adapt.max_iters = static_cast<int>(parse_long("max_iters", v, l)); }},
      {"max_dofs", [&](auto &v, int l) { c.adapt.max_dofs = parse_long("max_dofs", v, l); }},
      {"h0", [&](auto &v, int l) { c.adapt.h0 = parse_double("h0", v, l); }},
      {"n_max",
       [&](auto &v, int l) { c.adapt.n_max = static_cast<int>(parse_long("n_max", v, l)); }},
      {"jump_flux", [&](auto &v, int) { c.adapt.jump_flux = v; }}}},
    {"output",
     {{"dir", [&](auto &v, int) { c.output.dir = v; }},
      {"write_vtk",
       [&](auto &v, int l) { c.output.write_vtk = parse_bool("write_vtk", v, l); }},
      {"write_system",
       [&](auto &v, int l) { c.output.write_system = parse_bool("write_system", v, l); }}}},
  };

  while (std::getline(in, raw))
  {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos)
    {
      raw.erase(hash);
    }
    const std::string s = trim(raw);
    if (s.empty())
    {
      continue;
    }
    if (s.front() == '[')
    {
      if (s.back() != ']')
      {
        throw ConfigError("line " + std::to_string(line) + ": malformed section header");
      }
      section = trim(s.substr(1, s.size() - 2));
      if (!keys.count(section))
      {
        throw ConfigError("line " + std::to_string(line) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    if (section.empty())
    {
      throw ConfigError("line " + std::to_string(line) + ": key outside of any section");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto &sec = keys.at(section);
    const auto it = sec.find(key);
    if (it == sec.end())
    {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key +
                        "' in section [" + section + "]");
    }
    if (!seen.insert(section + "." + key).second)
    {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    }
    if (value.empty())
    {
      throw ConfigError("line " + std::to_string(line) + ": empty value for '" + key + "'");
    }
    it->second(value, line);
  }
  if (c.grating.builtin.empty() && c.grating.profile.empty())
  {
    c.grating.builtin = "flat";
  }
  validate(c, omega, lambda, mu, theta);
  return c;
}

RunConfig load_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string write_config(const RunConfig &c)
{
  std::ostringstream o;
  auto num = [](double v) { return format_roundtrip(v); };
  o << "[wave]\n";
  o << "omega = " << num(c.wave.omega) << "\n";
  o << "lambda = " << num(c.wave.lambda) << "\n";
  o << "mu = " << num(c.wave.mu) << "\n";
  o << "theta_deg = " << num(c.wave.theta_deg) << "\n";
  o << "period = " << num(c.wave.period) << "\n";
  o << "gamma_height = " << num(c.wave.gamma_height) << "\n";
  o << "\n[grating]\n";
  if (!c.grating.profile.empty())
  {
    o << "profile = " << c.grating.profile << "\n";
  }
  else
  {
    o << "builtin = " << c.grating.builtin << "\n";
  }
  o << "\n[pml]\n";
  o << "sigma_re = " << num(c.pml.sigma_re) << "\n";
  o << "sigma_im = " << num(c.pml.sigma_im) << "\n";
  o << "m = " << c.pml.m << "\n";
  if (c.pml.delta)
  {
    o << "delta = " << num(*c.pml.delta) << "\n";
  }
  if (c.pml.target_fhat)
  {
    o << "target_fhat = " << num(*c.pml.target_fhat) << "\n";
  }
  o << "delta_cap = " << num(c.pml.delta_cap) << "\n";
  o << "\n[adapt]\n";
  o << "tolerance = " << num(c.adapt.tolerance) << "\n";
  o << "tau = " << num(c.adapt.tau) << "\n";
  o << "max_iters = " << c.adapt.max_iters << "\n";
  o << "max_dofs = " << c.adapt.max_dofs << "\n";
  o << "h0 = " << num(c.adapt.h0) << "\n";
  o << "n_max = " << c.adapt.n_max << "\n";
  o << "jump_flux = " << c.adapt.jump_flux << "\n";
  o << "\n[output]\n";
  o << "dir = " << c.output.dir << "\n";
  o << "write_vtk = " << (c.output.write_vtk ? "true" : "false") << "\n";
  o << "write_system = " << (c.output.write_system ? "true" : "false") << "\n";
  return o.str();
}

ProblemSetup to_setup(const RunConfig &c, const std::string &base_dir)
{
  ProblemSetup s;
  s.ctx = derive_context(c.wave.omega, c.wave.lambda, c.wave.mu, c.wave.theta_deg * pi / 180.0,
                         c.wave.period, c.wave.gamma_height);
  if (!c.grating.profile.empty())
  {
    std::filesystem::path p(c.grating.profile);
    if (p.is_relative())
    {
      p = std::filesystem::path(base_dir) / p;
    }
    s.profile = read_profile_file(p.string(), c.wave.period, c.wave.gamma_height);
  }
  else if (c.grating.builtin == "sharp")
  {
    s.profile = make_profile(sharp_profile(c.wave.period).vertices, c.wave.period,
                             c.wave.gamma_height);
  }
  else
  {
    s.profile = make_profile(flat_profile(c.wave.period).vertices, c.wave.period,
                             c.wave.gamma_height);
    s.flat_reference = true;
  }
  s.sigma = Complex(c.pml.sigma_re, c.pml.sigma_im);
  s.m = c.pml.m;
  s.delta = c.pml.delta;
  s.target_fhat = c.target_fhat();
  s.calibration.delta_cap = c.pml.delta_cap;
  return s;
}

AdaptSettings to_settings(const RunConfig &c)
{
  AdaptSettings a;
  a.tolerance = c.adapt.tolerance;
  a.tau = c.adapt.tau;
  a.max_iters = c.adapt.max_iters;
  a.max_dofs = c.adapt.max_dofs;
  a.h0 = c.adapt.h0;
  a.n_max = c.adapt.n_max;
  a.flux = c.adapt.jump_flux == "literal" ? JumpFlux::Literal : JumpFlux::Weighted;
  return a;
}

}  // namespace gratingpml
