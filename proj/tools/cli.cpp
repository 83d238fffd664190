// Copyright 2026 The diagfun Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "diagfun/approx.hpp"
#include "diagfun/banded.hpp"
#include "diagfun/closedform.hpp"
#include "diagfun/densefun.hpp"
#include "diagfun/diagsets.hpp"
#include "diagfun/toepdisp.hpp"

namespace diagfun::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "not a number: '" + s + "'");
  }
}

long to_long(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v)) throw Error(Errc::invalid_argument, "not an integer: '" + s + "'");
  return static_cast<long>(v);
}

std::vector<double> to_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

Vector padded(const std::vector<double>& v, Index n) {
  Vector out = Vector::Zero(n);
  for (Index i = 0; i < n && i < static_cast<Index>(v.size()); ++i) out(i) = v[static_cast<std::size_t>(i)];
  return out;
}

Input from_toeplitz(ToeplitzMatrix t, std::string label) {
  Input in;
  in.a = t.to_diag();
  in.toeplitz = std::move(t);
  in.label = std::move(label);
  return in;
}

std::optional<ToeplitzMatrix> detect_toeplitz(const DiagMatrix& a) {
  const Index n = a.n();
  Vector c = Vector::Zero(n), r = Vector::Zero(n);
  for (const auto& [d, v] : a.diagonals()) {
    if (v.size() && (v.array() != v(0)).any()) return std::nullopt;
    (d >= 0 ? r(d) : c(-d)) = v.size() ? v(0) : 0.0;
  }
  c(0) = r(0);
  return ToeplitzMatrix(c, r);
}

// one table per command; scalar commands use (quantity, value) rows
struct Report {
  std::string command;
  std::string input;
  std::vector<std::string> columns{"quantity", "value"};
  std::vector<std::vector<json>> rows;

  void add(const std::string& quantity, json value) { rows.push_back({quantity, std::move(value)}); }
};

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    return s.find_first_of(",\"\n") == std::string::npos ? s : json(s).dump();
  }
  if (v.is_number_float()) {
    std::ostringstream o;
    o << std::setprecision(17) << v.get<double>();
    return o.str();
  }
  return v.dump();
}

void write_report(const Report& rep, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc;
    doc["command"] = rep.command;
    doc["input"] = rep.input;
    json rows = json::array();
    for (const auto& row : rep.rows) {
      json obj;
      for (std::size_t c = 0; c < rep.columns.size(); ++c) obj[rep.columns[c]] = row[c];
      rows.push_back(obj);
    }
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t c = 0; c < rep.columns.size(); ++c) out << (c ? "," : "") << rep.columns[c];
  out << '\n';
  for (const auto& row : rep.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << '\n';
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double spectral_norm(const Dense& a) { return Eigen::BDCSVD<Dense>(a).singularValues()(0); }

void add_report(Report& rep, const ApproxReport& r) {
  rep.add("k", r.k);
  rep.add("hermitian", r.hermitian);
  rep.add("solves", r.solves);
  rep.add("max_submatrix", r.max_submatrix);
  rep.add("total_submatrix", r.total_submatrix);
  rep.add("proxy", r.proxy);
  rep.add("bound", r.bound);
}

void add_matrix_errors(Report& rep, const Dense& approx, const Dense& exact) {
  const Dense d = approx - exact;
  rep.add("error_max_abs", d.cwiseAbs().maxCoeff());
  rep.add("error_fro", d.norm());
  rep.add("error_2", spectral_norm(d));
}

struct Common {
  std::string mtx, gen, fspec = "exp", format = "csv", output;
  int k = 10;
  int threads = 0;
  long oracle_max_n = 2000;
  std::string dump;
};

void add_common(CLI::App* sub, Common& c, bool with_k = true) {
  sub->add_option("--mtx", c.mtx, "Matrix Market input file");
  sub->add_option("--gen", c.gen, "built-in generator, e.g. kron-laplacian:30");
  sub->add_option("--f", c.fspec, "function: exp, log, sqrt, inv, inv-sqrt, exp@s, poly:c0,c1,..");
  if (with_k) sub->add_option("--k", c.k, "polynomial degree")->check(CLI::NonNegativeNumber);
  sub->add_option("--threads", c.threads, "worker threads (0 = all cores, 1 = serial)")->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output,-o", c.output, "report file (default stdout)");
  sub->add_option("--oracle-max-n", c.oracle_max_n, "largest n that gets a dense oracle (0 disables)");
}

bool want_oracle(const Common& c, Index n) { return c.oracle_max_n > 0 && n <= c.oracle_max_n; }

Dense dense_reference(const Input& in, const ScalarFunction& f) {
  return apply(in.a.to_dense(), f, is_hermitian(in.a));
}

void dump_matrix(const std::string& path, const DiagMatrix& m) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw Error(Errc::io_error, "cannot write " + path);
  write_matrix_market(f, m);
}

}  // namespace

ExitCode exit_code(Errc code) {
  switch (code) {
    case Errc::unsupported_kernel:
      return usage;
    case Errc::dimension_mismatch:
    case Errc::out_of_range:
    case Errc::invalid_argument:
    case Errc::invalid_partition:
    case Errc::mm_bad_header:
    case Errc::mm_not_square:
    case Errc::mm_index_out_of_bounds:
    case Errc::mm_bad_entry:
    case Errc::io_error:
      return input;
    case Errc::non_hermitian:
    case Errc::domain_error:
    case Errc::quadrature_failure:
    case Errc::uncertified_symbol:
    case Errc::ill_conditioned:
    case Errc::dense_fallback_advised:
      return numerical;
  }
  return numerical;
}

std::vector<long> parse_range(const std::string& spec) {
  const auto parts = split(spec.find("..") != std::string::npos
                               ? spec.substr(0, spec.find("..")) + ":" + spec.substr(spec.find("..") + 2)
                               : spec,
                           ':');
  long lo = 0, step = 1, hi = 0;
  if (parts.size() == 1) {
    lo = hi = to_long(parts[0]);
  } else if (parts.size() == 2) {
    lo = to_long(parts[0]), hi = to_long(parts[1]);
  } else if (parts.size() == 3) {
    lo = to_long(parts[0]), step = to_long(parts[1]), hi = to_long(parts[2]);
  } else {
    throw Error(Errc::invalid_argument, "bad range '" + spec + "'");
  }
  if (step <= 0 || hi < lo) throw Error(Errc::invalid_argument, "bad range '" + spec + "'");
  std::vector<long> out;
  for (long v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

Input generate(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need = [&](bool ok) {
    if (!ok) throw Error(Errc::invalid_argument, "bad generator '" + spec + "'");
  };

  if (name == "kron-laplacian") {
    const long n = to_long(args);
    need(n >= 1);
    return {kron_sum_laplacian(n), std::nullopt, spec};
  }
  if (name == "tridiag") {
    const auto v = to_doubles(args);
    need(v.size() == 3 && v[2] >= 1 && v[2] == std::floor(v[2]));
    const Index n = static_cast<Index>(v[2]);
    return from_toeplitz(ToeplitzMatrix::symmetric(padded({v[1], v[0]}, n)), spec);
  }
  if (name == "toeplitz") {
    const auto parts = split(args, '|');
    need(parts.size() >= 1 && parts.size() <= 3);
    const auto c = to_doubles(parts[0]);
    const auto r = parts.size() >= 2 && !parts[1].empty() ? to_doubles(parts[1]) : c;
    Index n = static_cast<Index>(std::max(c.size(), r.size()));
    if (parts.size() == 3) n = to_long(parts[2]);
    need(n >= 1 && !c.empty() && !r.empty());
    if (c[0] != r[0]) throw Error(Errc::invalid_argument, "toeplitz: c[0] and r[0] differ");
    return from_toeplitz(ToeplitzMatrix(padded(c, n), padded(r, n)), spec);
  }
  if (name == "circulant") {
    auto v = to_doubles(args);
    need(v.size() >= 2);
    const double nd = v.back();
    v.pop_back();
    need(nd >= 1 && nd == std::floor(nd) && static_cast<double>(v.size()) <= nd);
    const Index n = static_cast<Index>(nd);
    const Vector row = padded(v, n);
    Vector col(n);
    col(0) = row(0);
    for (Index i = 1; i < n; ++i) col(i) = row(n - i);
    return from_toeplitz(ToeplitzMatrix(col, row), spec);
  }
  if (name == "banded-random") {
    const auto v = to_doubles(args);
    need(v.size() == 3 && v[0] >= 1 && v[1] >= 0);
    const Index n = static_cast<Index>(v[0]), m = static_cast<Index>(v[1]);
    std::mt19937_64 rng(static_cast<std::uint64_t>(v[2]));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DiagMatrix a(n);
    for (Index d = -std::min(m, n - 1); d <= std::min(m, n - 1); ++d) {
      Vector diag(n - std::abs(d));
      for (Index i = 0; i < diag.size(); ++i) diag(i) = u(rng);
      a.set_diagonal(d, diag);
    }
    return {a, std::nullopt, spec};
  }
  if (name == "toeplitz-random") {
    const auto v = to_doubles(args);
    need(v.size() == 2 && v[0] >= 4);
    const Index n = static_cast<Index>(v[0]);
    std::mt19937_64 rng(static_cast<std::uint64_t>(v[1]));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector c = Vector::Zero(n), r = Vector::Zero(n);
    c(0) = r(0) = u(rng);
    for (Index d : {Index{1}, n / 2, n / 2 + 1, n - 1}) c(d) = u(rng), r(d) = u(rng);
    return from_toeplitz(ToeplitzMatrix(c, r), spec);
  }
  throw Error(Errc::invalid_argument, "unknown generator '" + name + "'");
}

Input load(const std::string& mtx_path, const std::string& generator) {
  if (mtx_path.empty() == generator.empty())
    throw UsageError("give exactly one of --mtx or --gen");
  if (!generator.empty()) return generate(generator);
  Input in;
  in.a = read_matrix_market(std::filesystem::path(mtx_path));
  in.toeplitz = detect_toeplitz(in.a);
  in.label = mtx_path;
  return in;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate matrix functions from the positions of nonzero diagonals"};
  app.require_subcommand(1);
  Common c;

  auto* funm = app.add_subcommand("funm", "whole f(A) from principal submatrices");
  add_common(funm, c);
  Index block = 64;
  funm->add_option("--block", block, "row tile height")->check(CLI::PositiveNumber);
  funm->add_option("--dump", c.dump, "write the approximation as Matrix Market");

  auto* banded = app.add_subcommand("banded", "f(A) for banded A by overlapping blocks");
  add_common(banded, c);
  Index bandwidth = -1;
  banded->add_option("--m", bandwidth, "bandwidth (default: detected)");
  banded->add_option("--dump", c.dump, "write the approximation as Matrix Market");

  auto* toep = app.add_subcommand("toeplitz", "f(T) for Toeplitz T via displacement");
  add_common(toep, c);
  ToeplitzOptions topt;
  toep->add_option("--max-delta", topt.max_delta, "largest submatrix before advising a dense solve");
  toep->add_option("--zero-tol", topt.zero_tol, "relative zero threshold for the displacement");
  toep->add_option("--dump", c.dump, "write the approximation as Matrix Market");

  auto* elem = app.add_subcommand("element", "one entry [f(A)]_ij");
  add_common(elem, c);
  Index ei = 1, ej = 1;
  elem->add_option("--i", ei, "row (1-based)")->required();
  elem->add_option("--j", ej, "column (1-based)")->required();

  auto* trace = app.add_subcommand("trace", "trace of f(A)");
  add_common(trace, c);

  auto* diag = app.add_subcommand("diag", "diagonal of f(A) in batches");
  add_common(diag, c);
  Index batch = 100;
  diag->add_option("--batch", batch, "indices per submatrix")->check(CLI::PositiveNumber);

  auto* cf = app.add_subcommand("closedform", "closed-form elements for symmetric banded Toeplitz");
  std::string symbol, nspec = "100";
  long cf_m = 0;
  double cf_eps = 0.0;
  cf->add_option("--symbol", symbol, "a0,a1,...,ar")->required();
  cf->add_option("--f", c.fspec, "function");
  cf->add_option("--n", nspec, "size or range lo:hi or lo:step:hi");
  cf->add_option("--m", cf_m, "cut-off (default min(40, n))");
  cf->add_option("--eps", cf_eps, "choose the cut-off for this accuracy instead of --m");
  cf->add_option("--threads", c.threads, "worker threads")->check(CLI::NonNegativeNumber);
  cf->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cf->add_option("--output,-o", c.output, "report file");

  auto* decay = app.add_subcommand("decay-bound", "diagonal decay bound vs measured maxima");
  add_common(decay, c, false);
  double norm = 0.0, tau = 3.0;
  std::string kspec = "0..30";
  decay->add_option("--norm", norm, "rescale A to this spectral norm");
  decay->add_option("--tau", tau, "disk enlargement factor > 1");
  decay->add_option("--k", kspec, "degrees, e.g. 0..40");

  auto* orc = app.add_subcommand("oracle", "dense reference f(A), optionally compared to a file");
  add_common(orc, c, false);
  std::string compare;
  orc->add_option("--compare", compare, "Matrix Market approximation to score");
  orc->add_option("--dump", c.dump, "write dense f(A) as Matrix Market");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    const ExecPolicy exec{c.threads};
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    const ScalarFunction f = ScalarFunction::parse(c.fspec);
    auto* sub = app.get_subcommands().front();
    rep.command = sub->get_name();

    if (sub == cf) {
      const auto sym = LaurentSymbol::parse(symbol);
      const auto an = analyze(sym, f);
      rep.input = "symbol:" + symbol;
      rep.columns = {"n", "m", "error_2", "time_s"};
      for (long n : parse_range(nspec)) {
        if (n < 1) throw Error(Errc::invalid_argument, "n must be >= 1");
        const auto tn = std::chrono::steady_clock::now();
        Index m = cf_m > 0 ? cf_m : std::min<Index>(40, n);
        if (cf_eps > 0.0) m = std::max<Index>(1, choose_m(an, cf_eps).m());
        const Dense approx = closedform_matrix(an, n, m, exec);
        const double time = seconds_since(tn);
        const Dense exact = funm_hermitian(sym.matrix(n).to_dense(), f);
        rep.rows.push_back({n, m, spectral_norm(approx - exact), time});
      }
    } else {
      const Input in = load(c.mtx, c.gen);
      rep.input = in.label;
      const Index n = in.a.n();
      rep.add("n", n);

      if (sub == funm || sub == banded || sub == toep) {
        DiagMatrix value;
        if (sub == funm) {
          auto r = funm_approx(in.a, f, c.k, block, exec);
          value = std::move(r.value);
          add_report(rep, r.report);
        } else if (sub == banded) {
          auto r = banded_funm(in.a, f, c.k, bandwidth, exec);
          value = std::move(r.value);
          add_report(rep, r.report);
        } else {
          if (!in.toeplitz) throw Error(Errc::invalid_argument, "toeplitz: input is not a Toeplitz matrix");
          topt.exec = exec;
          auto r = toeplitz_funm(*in.toeplitz, f, c.k, topt);
          value = std::move(r.value);
          add_report(rep, r.report);
          rep.add("delta_nabla", r.delta_nabla);
          rep.add("delta_zero", r.delta_zero);
          rep.add("delta", std::max(r.delta_nabla, r.delta_zero));
          rep.add("generator_width", r.generator_width);
          rep.add("zero_runs", r.zero_runs);
        }
        rep.add("diagonals", static_cast<Index>(value.diagonals().size()));
        rep.add("time_s", seconds_since(t0));
        if (want_oracle(c, n)) add_matrix_errors(rep, value.to_dense(), dense_reference(in, f));
        dump_matrix(c.dump, value);
      } else if (sub == elem) {
        auto r = element_approx(in.a, f, ei, ej, c.k);
        rep.add("i", ei);
        rep.add("j", ej);
        rep.add("value", r.value);
        rep.add("structural_zero", r.structural_zero);
        rep.add("submatrix", r.submatrix);
        add_report(rep, r.report);
        rep.add("time_s", seconds_since(t0));
        if (want_oracle(c, n)) {
          const double exact = dense_reference(in, f)(ei - 1, ej - 1);
          rep.add("exact", exact);
          rep.add("abs_error", std::abs(r.value - exact));
        }
      } else if (sub == trace) {
        auto r = trace_approx(in.a, f, c.k, exec);
        rep.add("value", r.value);
        rep.add("delta11", r.delta11);
        add_report(rep, r.report);
        rep.add("time_s", seconds_since(t0));
        if (want_oracle(c, n)) {
          const double exact = dense_reference(in, f).trace();
          rep.add("exact", exact);
          rep.add("abs_error", std::abs(r.value - exact));
          rep.add("rel_error", std::abs(r.value - exact) / std::max(1e-300, std::abs(exact)));
        }
      } else if (sub == diag) {
        auto r = diag_approx(in.a, f, c.k, batch, exec);
        const bool orc_on = want_oracle(c, n);
        Vector exact;
        if (orc_on) exact = dense_reference(in, f).diagonal();
        rep.rows.clear();
        rep.columns = {"index", "value"};
        if (orc_on) rep.columns.insert(rep.columns.end(), {"exact", "abs_error"});
        for (Index i = 0; i < n; ++i) {
          std::vector<json> row{i + 1, r.values(i)};
          if (orc_on) row.insert(row.end(), {exact(i), std::abs(r.values(i) - exact(i))});
          rep.rows.push_back(std::move(row));
        }
      } else if (sub == decay) {
        if (!(tau > 1.0)) throw Error(Errc::invalid_argument, "--tau must exceed 1");
        Dense a = in.a.to_dense();
        double an = spectral_norm(a);
        if (norm > 0.0 && an > 0.0) a *= norm / an, an = norm;
        const Dense fa = apply(a, f, a.isApprox(a.transpose(), 0.0));
        const DiagSet pattern = nd(DiagMatrix::from_dense(a));
        rep.rows.clear();
        rep.columns = {"k", "bound", "measured"};
        for (long k : parse_range(kspec)) {
          if (k < 0) throw Error(Errc::invalid_argument, "k must be >= 0");
          const DiagSet u = k == 0 ? DiagSet() : u_set(pattern, static_cast<int>(k - 1));
          double measured = 0.0;
          for (Index r = -(n - 1); r <= n - 1; ++r) {
            if (k > 0 && u.contains(r)) continue;
            for (Index i = std::max<Index>(0, -r); i < std::min(n, n - r); ++i)
              measured = std::max(measured, std::abs(fa(i, i + r)));
          }
          rep.rows.push_back({k, decay_bound(an, tau, static_cast<int>(k), f), measured});
        }
      } else if (sub == orc) {
        const Dense exact = dense_reference(in, f);
        rep.add("kernel", std::string(is_hermitian(in.a) ? "hermitian-eigen" : f.kind() == FunKind::exp ? "expm" : "polynomial"));
        rep.add("time_s", seconds_since(t0));
        if (!compare.empty()) {
          const DiagMatrix approx = read_matrix_market(std::filesystem::path(compare));
          if (approx.n() != n) throw Error(Errc::dimension_mismatch, "compare: size mismatch");
          add_matrix_errors(rep, approx.to_dense(), exact);
        }
        dump_matrix(c.dump, DiagMatrix::from_dense(exact));
      }
    }

    if (c.output.empty()) {
      write_report(rep, c.format, out);
    } else {
      std::ofstream file(c.output);
      if (!file) throw Error(Errc::io_error, "cannot write " + c.output);
      write_report(rep, c.format, file);
    }
    return ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return numerical;
  }
}

}  // namespace diagfun::cli
