#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvol/closed_forms.hpp"
#include "mvol/haar.hpp"
#include "mvol/integrate.hpp"
#include "mvol/matrix_chart.hpp"
#include "mvol/states.hpp"

namespace mvol::cli {

// exit codes: 0 ok, 2 argument/usage error, 3 verification failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

namespace detail {

inline std::string approx_str(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

inline std::string value_line(const ExactVolume& v) {
  return v.str() + " ≈ " + approx_str(v.approx());
}

inline Family parse_family(const std::string& name) {
  static const std::map<std::string, Family> families = {
      {"sphere", Family::Sphere},   {"ball", Family::Ball},
      {"rp", Family::RealProj},     {"cp", Family::ComplexProj},
      {"hp", Family::QuatProj},     {"op", Family::OctProj},
      {"su", Family::SU},           {"u", Family::U},
      {"pu", Family::PU},           {"so", Family::SO},
      {"o", Family::O},             {"spin", Family::Spin},
      {"sp", Family::Sp},           {"g2", Family::G2},
      {"f4", Family::F4},           {"cflag", Family::ComplexFlag},
      {"rflag", Family::RealFlag}};
  const auto it = families.find(name);
  if (it == families.end())
    throw UnsupportedManifoldError("unknown manifold family '" + name + "'");
  return it->second;
}

inline std::string manifold_name(Family f, const std::vector<int>& params,
                                 const Rational& xi) {
  static const std::map<Family, std::string> prefix = {
      {Family::Sphere, "S^"},     {Family::Ball, "D^"},  {Family::RealProj, "RP^"},
      {Family::ComplexProj, "CP^"}, {Family::QuatProj, "HP^"}, {Family::OctProj, "OP^"},
      {Family::SU, "SU"},         {Family::U, "U"},      {Family::PU, "PU"},
      {Family::SO, "SO"},         {Family::O, "O"},      {Family::Spin, "Spin"},
      {Family::Sp, "Sp"}};
  if (f == Family::G2 || f == Family::F4) {
    std::string name = f == Family::G2 ? "G2" : "F4";
    if (xi != 1) {
      std::ostringstream os;
      os << xi;
      name += "[xi=" + os.str() + "]";
    }
    return name;
  }
  if (f == Family::ComplexFlag || f == Family::RealFlag) {
    std::string name = f == Family::ComplexFlag ? "Fl" : "RFl";
    name += "[";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) name += ",";
      name += std::to_string(params[i]);
    }
    return name + "]";
  }
  const std::string& pre = prefix.at(f);
  if (pre.back() == '^') return pre + std::to_string(params.at(0));
  return pre + "(" + std::to_string(params.at(0)) + ")";
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    return Rational(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw UnsupportedManifoldError("cannot parse rational '" + text + "'");
  }
}

inline nlohmann::json volume_json(const std::string& name, const ExactVolume& v) {
  nlohmann::json j = v;
  j["str"] = v.str();
  j["manifold"] = name;
  return j;
}

inline nlohmann::json matrix_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void print_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << std::setprecision(10);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      out << (c ? "  " : "") << z.real() << (z.imag() < 0 ? "-" : "+")
          << std::abs(z.imag()) << "i";
    }
    out << "\n";
  }
}

struct VerifyTarget {
  Chart chart;
  ExactVolume exact;
};

inline VerifyTarget verify_target(const std::string& name) {
  if (name == "su2-euler") return {su2_euler_chart(), vol_su(2)};
  if (name == "su2-embedding") return {su2_embedding_chart(), vol_su(2)};
  if (name == "so3-euler") return {so3_euler_chart(), vol_so(3)};
  if (name == "su3") return {chart_from_matrix(su3_matrix_chart()), vol_su(3)};
  if (name.starts_with("sphere-")) {
    const int n = std::stoi(name.substr(7));
    return {sphere_chart(n), vol_sphere(n)};
  }
  throw UnsupportedManifoldError(
      "unknown chart '" + name +
      "' (expected su2-euler, su2-embedding, so3-euler, su3 or sphere-<n>)");
}

struct TableRow {
  std::string name;
  ExactVolume value;
};

inline void emit_rows(const std::vector<TableRow>& rows, bool json,
                      std::ostream& out) {
  if (json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) j.push_back(volume_json(r.name, r.value));
    out << j.dump(2) << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  for (const auto& r : rows)
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.name
        << value_line(r.value) << "\n";
}

}  // namespace detail

/// Runs the command line given as plain arguments (no program name).
/// Output goes to `out`, diagnostics to `err`; the return value is the
/// process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and verified volumes of compact manifolds"};
  app.require_subcommand(0, 1);

  // --- volume ---------------------------------------------------------
  auto* volume_cmd = app.add_subcommand(
      "volume", "Closed-form volume of a manifold (exact value and approximation)");
  std::string vol_family;
  std::vector<int> vol_params;
  std::string vol_xi = "1";
  std::string vol_format = "text";
  volume_cmd->add_option("family", vol_family,
                         "sphere|ball|rp|cp|hp|op|su|u|pu|so|o|spin|sp|g2|f4|cflag|rflag")
      ->required();
  volume_cmd->add_option("params", vol_params,
                         "dimension/rank, or the partition for cflag/rflag");
  volume_cmd->add_option("--xi", vol_xi, "scale factor p/q for g2/f4 (default 1)");
  volume_cmd->add_option("--format", vol_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- verify ---------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify", "Integrate a chart density numerically and compare with the exact volume");
  std::string verify_chart;
  std::string verify_method;
  int verify_order = 32;
  std::uint64_t verify_samples = 1000000;
  std::optional<std::uint64_t> verify_seed;
  unsigned verify_chunks = 64;
  std::optional<double> verify_tol;
  std::string verify_format = "text";
  verify_cmd->add_option("chart", verify_chart,
                         "su2-euler|su2-embedding|so3-euler|su3|sphere-<n>")
      ->required();
  verify_cmd->add_option("--method", verify_method, "quad|mc (default: quad if dim <= 4)")
      ->check(CLI::IsMember({"quad", "mc"}));
  verify_cmd->add_option("--order", verify_order, "Gauss-Legendre order (quad)");
  verify_cmd->add_option("--samples", verify_samples, "sample count (mc)");
  verify_cmd->add_option("--seed", verify_seed, "RNG seed (required for mc)");
  verify_cmd->add_option("--chunks", verify_chunks, "independent RNG chunks (mc)");
  verify_cmd->add_option("--tol", verify_tol,
                         "tolerance: relative error for quad (default 1e-8), "
                         "number of std errors for mc (default 3)");
  verify_cmd->add_option("--format", verify_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- weinstein ------------------------------------------------------
  auto* weinstein_cmd =
      app.add_subcommand("weinstein", "Weinstein integer of a projective space");
  std::string wein_family;
  int wein_n = 0;
  weinstein_cmd->add_option("family", wein_family, "rp|cp|hp|op")
      ->required()
      ->check(CLI::IsMember({"rp", "cp", "hp", "op"}));
  weinstein_cmd->add_option("n", wein_n, "projective dimension")->required();

  // --- sample ---------------------------------------------------------
  auto* sample_cmd =
      app.add_subcommand("sample", "Draw Haar-distributed group elements");
  std::string sample_group;
  std::uint64_t sample_count = 1;
  std::uint64_t sample_seed = 0;
  std::string sample_format = "text";
  sample_cmd->add_option("group", sample_group, "su2|so3|su3")
      ->required()
      ->check(CLI::IsMember({"su2", "so3", "su3"}));
  sample_cmd->add_option("--count", sample_count, "number of samples")->required();
  sample_cmd->add_option("--seed", sample_seed, "RNG seed")->required();
  sample_cmd->add_option("--format", sample_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- table ----------------------------------------------------------
  auto* table_cmd = app.add_subcommand("table", "Print a family of volumes");
  std::string table_name;
  int table_max = 0;
  std::string table_format = "text";
  table_cmd->add_option("which", table_name, "spheres|projective|groups|flags")
      ->required()
      ->check(CLI::IsMember({"spheres", "projective", "groups", "flags"}));
  table_cmd->add_option("--max", table_max,
                        "row bound: sphere count (default 6) or largest n (default 4-5)");
  table_cmd->add_option("--format", table_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- orbits ---------------------------------------------------------
  auto* orbits_cmd = app.add_subcommand(
      "orbits", "Density-matrix spectral types and orbit volumes for dimension n");
  int orbits_n = 0;
  std::string orbits_format = "text";
  orbits_cmd->add_option("n", orbits_n, "Hilbert-space dimension")->required();
  orbits_cmd->add_option("--format", orbits_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // --- clashes --------------------------------------------------------
  auto* clashes_cmd = app.add_subcommand(
      "clashes", "Volume mismatches across accidental group isomorphisms");
  std::string clashes_format = "text";
  clashes_cmd->add_option("--format", clashes_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(volume_cmd)) {
      const Family family = detail::parse_family(vol_family);
      const ManifoldId id{family, vol_params, detail::parse_rational(vol_xi)};
      const ExactVolume v = volume(id);
      const std::string name = detail::manifold_name(family, vol_params, id.xi);
      if (vol_format == "json")
        out << detail::volume_json(name, v).dump(2) << "\n";
      else
        out << detail::value_line(v) << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(verify_cmd)) {
      const detail::VerifyTarget target = detail::verify_target(verify_chart);
      if (verify_method.empty())
        verify_method = target.chart.dim <= 4 ? "quad" : "mc";
      if (verify_method == "mc" && !verify_seed.has_value()) {
        err << "verify: --seed is required with --method mc (no wall-clock seeding)\n";
        return kExitUsage;
      }

      IntegrationResult result;
      double tolerance = 0.0;
      bool pass = false;
      const double exact = target.exact.approx();
      if (verify_method == "quad") {
        result = integrate_tensor(target.chart, verify_order);
        tolerance = verify_tol.value_or(1e-8);
        pass = std::abs(result.estimate - exact) <= tolerance * std::abs(exact);
      } else {
        result = integrate_mc(target.chart, verify_samples, *verify_seed, verify_chunks);
        tolerance = verify_tol.value_or(3.0);
        pass = std::abs(result.estimate - exact) <= tolerance * result.std_error;
      }

      if (verify_format == "json") {
        nlohmann::json j{{"chart", verify_chart},
                         {"method", verify_method},
                         {"exact", detail::volume_json(target.chart.label, target.exact)},
                         {"estimate", result.estimate},
                         {"std_error", result.std_error},
                         {"evaluations", result.evaluations},
                         {"tolerance", tolerance},
                         {"pass", pass}};
        if (verify_method == "quad") j["order"] = verify_order;
        else {
          j["samples"] = verify_samples;
          j["seed"] = *verify_seed;
          j["chunks"] = verify_chunks;
        }
        out << j.dump(2) << "\n";
      } else {
        out << "chart:       " << target.chart.label << "\n";
        out << "method:      " << verify_method << "\n";
        out << "exact:       " << detail::value_line(target.exact) << "\n";
        out << "estimate:    " << detail::approx_str(result.estimate) << "\n";
        if (verify_method == "mc")
          out << "std_error:   " << detail::approx_str(result.std_error) << "\n";
        out << "evaluations: " << result.evaluations << "\n";
        out << (pass ? "PASS" : "FAIL") << "\n";
      }
      return pass ? kExitOk : kExitVerifyFailed;
    }

    if (app.got_subcommand(weinstein_cmd)) {
      const Family family = detail::parse_family(wein_family);
      const Int i = weinstein_integer({family, {wein_n}});
      out << i.str() << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(sample_cmd)) {
      std::mt19937_64 rng(sample_seed);
      std::vector<GroupSample> samples;
      samples.reserve(sample_count);
      std::optional<Su3Sampler> su3;  // envelope scan only when needed
      if (sample_group == "su3") su3.emplace();
      double acceptance = -1.0;
      for (std::uint64_t i = 0; i < sample_count; ++i) {
        if (sample_group == "su2") samples.push_back(sample_su2(rng));
        else if (sample_group == "so3") samples.push_back(sample_so3(rng));
        else samples.push_back(su3->sample(rng));
      }
      if (su3) acceptance = su3->acceptance_rate();

      if (sample_format == "json") {
        nlohmann::json j{{"group", sample_group},
                         {"count", sample_count},
                         {"seed", sample_seed}};
        nlohmann::json list = nlohmann::json::array();
        for (const auto& s : samples) list.push_back(detail::matrix_json(s.matrix));
        j["samples"] = std::move(list);
        if (acceptance >= 0.0) j["acceptance_rate"] = acceptance;
        out << j.dump(2) << "\n";
      } else {
        for (std::uint64_t i = 0; i < sample_count; ++i) {
          out << samples[i].group_label << " sample " << i + 1 << ":\n";
          detail::print_matrix(out, samples[i].matrix);
        }
        if (acceptance >= 0.0)
          out << "acceptance rate: " << detail::approx_str(acceptance) << "\n";
      }
      return kExitOk;
    }

    if (app.got_subcommand(table_cmd)) {
      std::vector<detail::TableRow> rows;
      if (table_name == "spheres") {
        const int count = table_max > 0 ? table_max : 6;
        for (int n = 0; n < count; ++n)
          rows.push_back({"S^" + std::to_string(n), vol_sphere(n)});
      } else if (table_name == "projective") {
        const int max_n = table_max > 0 ? table_max : 4;
        for (int n = 1; n <= max_n; ++n)
          rows.push_back({"RP^" + std::to_string(n), vol_projective(DivisionAlgebra::R, n)});
        for (int n = 1; n <= max_n; ++n)
          rows.push_back({"CP^" + std::to_string(n), vol_projective(DivisionAlgebra::C, n)});
        for (int n = 1; n <= max_n; ++n)
          rows.push_back({"HP^" + std::to_string(n), vol_projective(DivisionAlgebra::H, n)});
        rows.push_back({"OP^1", vol_projective(DivisionAlgebra::O, 1)});
        rows.push_back({"OP^2", vol_projective(DivisionAlgebra::O, 2)});
      } else if (table_name == "groups") {
        const int max_n = table_max > 0 ? table_max : 5;
        for (int n = 2; n <= max_n; ++n)
          rows.push_back({"SU(" + std::to_string(n) + ")", vol_su(n)});
        for (int n = 1; n <= max_n; ++n)
          rows.push_back({"U(" + std::to_string(n) + ")", vol_u(n)});
        for (int n = 2; n <= max_n; ++n)
          rows.push_back({"SO(" + std::to_string(n) + ")", vol_so(n)});
        for (int n = 1; n <= max_n; ++n)
          rows.push_back({"Sp(" + std::to_string(n) + ")", vol_sp(n)});
      } else {  // flags
        const int max_n = table_max > 0 ? table_max : 5;
        for (int n = 2; n <= max_n; ++n)
          rows.push_back({"Fl(" + std::to_string(n) + ")",
                          vol_complex_flag(std::vector<int>(n, 1))});
      }
      detail::emit_rows(rows, table_format == "json", out);
      return kExitOk;
    }

    if (app.got_subcommand(orbits_cmd)) {
      const auto types = enumerate_spectral_types(orbits_n);
      if (orbits_format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& t : types) {
          const OrbitVolume ov = orbit_volume(t.n, t.partition);
          j.push_back({{"partition", t.partition},
                       {"orbit", t.orbit_label},
                       {"dim", t.orbit_dim},
                       {"volume", detail::volume_json(t.orbit_label, ov.volume)},
                       {"is_point", ov.is_point}});
        }
        out << j.dump(2) << "\n";
      } else {
        for (const auto& t : types) {
          const OrbitVolume ov = orbit_volume(t.n, t.partition);
          std::string part = "[";
          for (std::size_t i = 0; i < t.partition.size(); ++i) {
            if (i) part += ",";
            part += std::to_string(t.partition[i]);
          }
          part += "]";
          out << std::left << std::setw(14) << part << std::setw(22) << t.orbit_label
              << "dim " << std::setw(4) << t.orbit_dim;
          if (ov.is_point) out << "single point\n";
          else out << detail::value_line(ov.volume) << "\n";
        }
      }
      return kExitOk;
    }

    if (app.got_subcommand(clashes_cmd)) {
      const auto clashes = normalization_clashes();
      if (clashes_format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& c : clashes)
          j.push_back({{"name_a", c.name_a},
                       {"value_a", detail::volume_json(c.name_a, c.value_a)},
                       {"name_b", c.name_b},
                       {"value_b", detail::volume_json(c.name_b, c.value_b)},
                       {"ratio", detail::volume_json(c.name_a + "/" + c.name_b, c.ratio)}});
        out << j.dump(2) << "\n";
      } else {
        for (const auto& c : clashes)
          out << c.name_a << " = " << detail::value_line(c.value_a) << "  vs  "
              << c.name_b << " = " << detail::value_line(c.value_b)
              << "  ratio = " << c.ratio.str() << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  err << app.help();
  return kExitUsage;
}

}  // namespace mvol::cli
