#include "syt/records.hpp"

#include "syt/errors.hpp"
#include "syt/version.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace syt {

namespace {

constexpr double kPi = std::numbers::pi;

/// Minimal pretty-printing JSON emitter; numbers go through format_double.
class JsonWriter {
public:
  JsonWriter() { os_ << "{"; }

  void key(const std::string& k) {
    separator();
    os_ << '"' << k << "\": ";
  }
  void number(const std::string& k, double x) {
    key(k);
    os_ << format_double(x);
  }
  void integer(const std::string& k, long long x) {
    key(k);
    os_ << x;
  }
  void boolean(const std::string& k, bool x) {
    key(k);
    os_ << (x ? "true" : "false");
  }
  void string(const std::string& k, const std::string& s) {
    key(k);
    os_ << '"' << s << '"';
  }
  void array(const std::string& k, const std::vector<double>& xs) {
    key(k);
    os_ << '[';
    for (std::size_t i = 0; i < xs.size(); ++i) os_ << (i ? ", " : "") << format_double(xs[i]);
    os_ << ']';
  }
  void open(const std::string& k) {
    key(k);
    os_ << '{';
    ++depth_;
    fresh_ = true;
  }
  void open_array(const std::string& k) {
    key(k);
    os_ << '[';
    ++depth_;
    fresh_ = true;
  }
  void open_element() {
    separator();
    os_ << '{';
    ++depth_;
    fresh_ = true;
  }
  void close(char c = '}') {
    --depth_;
    os_ << '\n' << std::string(2 * depth_, ' ') << c;
    fresh_ = false;
  }
  std::string finish() {
    os_ << "\n}\n";
    return os_.str();
  }

private:
  void separator() {
    if (!fresh_) os_ << ',';
    os_ << '\n' << std::string(2 * depth_, ' ');
    fresh_ = false;
  }

  std::ostringstream os_;
  int depth_ = 1;
  bool fresh_ = true;
};

void write_header(JsonWriter& w, const std::string& format, const ModelParams& p) {
  w.string("format", format);
  w.string("version", version());
  w.open("params");
  w.number("lambda", p.lambda);
  w.number("ell", p.ell);
  w.close();
}

double as_double(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw DomainError("record: expected a number");
  return j.get<double>();
}

std::vector<double> as_vector(const nlohmann::json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_array()) throw DomainError(std::string("record: missing array ") + name);
  std::vector<double> out;
  out.reserve(j[name].size());
  for (const auto& x : j[name]) out.push_back(as_double(x));
  return out;
}

nlohmann::json parse_record(const std::string& text, const std::string& format) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("record is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != format)
    throw DomainError("record format is not " + format);
  return j;
}

ModelParams params_of(const nlohmann::json& j) {
  if (!j.contains("params")) throw DomainError("record: missing params");
  return ModelParams::make(as_double(j["params"].at("lambda")), as_double(j["params"].at("ell")));
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    s += c;
    first = false;
  }
  return s + '\n';
}

} // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  // Negative zero would come back from a JSON parser as the integer 0.
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string solution_record(const SpinorField& field) {
  const TorusSolution& s = field.solution;
  JsonWriter w;
  write_header(w, "syt-solution", s.params);
  w.number("K", s.K);
  w.integer("k", s.k);
  w.integer("n_grid", s.n_grid());
  w.number("theta", field.theta);
  w.number("volume", s.volume);
  w.number("residual_sup", s.residual_sup);
  w.open("samples");
  w.array("t", s.t);
  w.array("f", s.f);
  w.array("g", s.g);
  w.array("u", s.u);
  w.array("v", s.v);
  std::vector<double> re(field.psi1.size()), im(field.psi1.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = field.psi1[i].real(), im[i] = field.psi1[i].imag();
  w.array("psi1_re", re);
  w.array("psi1_im", im);
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = field.psi2[i].real(), im[i] = field.psi2[i].imag();
  w.array("psi2_re", re);
  w.array("psi2_im", im);
  w.close();
  return w.finish();
}

SpinorField parse_solution_record(const std::string& text) {
  const nlohmann::json j = parse_record(text, "syt-solution");
  SpinorField field;
  TorusSolution& s = field.solution;
  try {
    s.params = params_of(j);
    s.K = as_double(j.at("K"));
    s.k = j.at("k").get<int>();
    s.volume = as_double(j.at("volume"));
    s.residual_sup = as_double(j.at("residual_sup"));
    field.theta = as_double(j.at("theta"));
    const auto& samples = j.at("samples");
    s.t = as_vector(samples, "t");
    s.f = as_vector(samples, "f");
    s.g = as_vector(samples, "g");
    s.u = as_vector(samples, "u");
    s.v = as_vector(samples, "v");
    const auto r1 = as_vector(samples, "psi1_re"), i1 = as_vector(samples, "psi1_im");
    const auto r2 = as_vector(samples, "psi2_re"), i2 = as_vector(samples, "psi2_im");
    const std::size_t n = s.t.size();
    if (n != static_cast<std::size_t>(j.at("n_grid").get<int>()))
      throw DomainError("record: n_grid does not match the sample count");
    const std::vector<const std::vector<double>*> arrays{&s.f, &s.g, &s.u, &s.v, &r1, &i1, &r2, &i2};
    for (const auto* a : arrays)
      if (a->size() != n) throw DomainError("record: sample arrays differ in length");
    field.psi1.resize(n);
    field.psi2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      field.psi1[i] = Complex(r1[i], i1[i]);
      field.psi2[i] = Complex(r2[i], i2[i]);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("record: ") + e.what());
  }
  return field;
}

std::string galerkin_record(const GalerkinModel& model, const GalerkinResult& result) {
  const FourierState& x = result.state;
  const ModelParams& p = model.params();
  JsonWriter w;
  write_header(w, "syt-galerkin", p);
  w.number("energy", result.energy);
  w.number("volume", 8.0 * kPi * result.energy);
  w.number("gradient_norm", result.gradient_norm);
  w.number("nehari_residual", result.nehari_residual);
  w.integer("restarts_used", result.restarts_used);
  w.open_array("starts");
  for (const auto& s : result.starts) {
    w.open_element();
    w.string("origin", s.origin);
    w.number("energy", s.energy);
    w.number("gradient_norm", s.gradient_norm);
    w.integer("iterations", s.iterations);
    w.boolean("converged", s.converged);
    w.close();
  }
  w.close(']');

  const int n = model.grid_size();
  auto [p1, p2] = model.to_grid(x, n);
  std::vector<double> t(n), rho(n), r1(n), i1(n), r2(n), i2(n);
  for (int j = 0; j < n; ++j) {
    t[j] = 2.0 * kPi * p.ell * j / n;
    r1[j] = p1[j].real(), i1[j] = p1[j].imag();
    r2[j] = p2[j].real(), i2[j] = p2[j].imag();
    rho[j] = std::norm(p1[j]) + std::norm(p2[j]);
  }
  w.integer("n_grid", n);
  w.open("samples");
  w.array("t", t);
  w.array("density", rho);
  w.array("psi1_re", r1);
  w.array("psi1_im", i1);
  w.array("psi2_re", r2);
  w.array("psi2_im", i2);
  w.close();

  w.open("spectral");
  w.integer("N", x.N);
  auto pairs = [&](const std::string& name, const Eigen::VectorXcd& c) {
    std::vector<double> flat;
    flat.reserve(2 * c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      flat.push_back(c[i].real());
      flat.push_back(c[i].imag());
    }
    w.array(name, flat);
  };
  pairs("c1", x.c1);
  pairs("c2", x.c2);
  w.close();
  return w.finish();
}

FourierState parse_galerkin_record(const std::string& text) {
  const nlohmann::json j = parse_record(text, "syt-galerkin");
  try {
    const ModelParams p = params_of(j);
    const auto& spec = j.at("spectral");
    const int N = spec.at("N").get<int>();
    FourierState x = FourierState::zero(p, N);
    const auto c1 = as_vector(spec, "c1"), c2 = as_vector(spec, "c2");
    if (c1.size() != static_cast<std::size_t>(2 * x.modes()) || c2.size() != c1.size())
      throw DomainError("record: coefficient arrays do not match N");
    for (int i = 0; i < x.modes(); ++i) {
      x.c1[i] = Complex(c1[2 * i], c1[2 * i + 1]);
      x.c2[i] = Complex(c2[2 * i], c2[2 * i + 1]);
    }
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("record: ") + e.what());
  }
}

std::string diagram_csv(const BifurcationDiagram& diagram) {
  std::vector<BranchRecord> rows = diagram.branches;
  std::stable_sort(rows.begin(), rows.end(), [](const BranchRecord& a, const BranchRecord& b) {
    if (a.kind != b.kind) return a.kind == BranchKind::constant;
    return a.k < b.k;
  });
  const std::string lam = format_double(diagram.params.lambda);
  const std::string ell = format_double(diagram.params.ell);
  std::string out = "lambda,ell,branch_kind,k,K,half_period,volume,energy,margin_const,margin_8pilambda\n";
  for (const auto& b : rows)
    out += csv_row({lam, ell, to_string(b.kind), std::to_string(b.k), format_double(b.K),
                    format_double(b.half_period), format_double(b.volume), format_double(b.energy),
                    format_double(b.margin_const), format_double(b.margin_8pilambda)});
  return out;
}

std::string diagram_json(const BifurcationDiagram& diagram) {
  JsonWriter w;
  write_header(w, "syt-diagram", diagram.params);
  w.integer("d", diagram.d);
  w.open_array("branches");
  for (const auto& b : diagram.branches) {
    w.open_element();
    w.string("branch_kind", to_string(b.kind));
    w.integer("k", b.k);
    w.number("K", b.K);
    w.number("log_K", b.log_K);
    w.number("half_period", b.half_period);
    w.number("volume", b.volume);
    w.number("energy", b.energy);
    w.number("margin_const", b.margin_const);
    w.number("margin_8pilambda", b.margin_8pilambda);
    w.boolean("underflow", b.underflow);
    w.close();
  }
  w.close(']');
  return w.finish();
}

std::string sweep_csv(double lambda, const std::vector<SweepRow>& rows) {
  std::string out = "lambda,ell,K,log_K,half_period,volume,gap_8pilambda,underflow\n";
  const std::string lam = format_double(lambda);
  for (const auto& r : rows)
    out += csv_row({lam, format_double(r.ell), format_double(r.K), format_double(r.log_K),
                    format_double(r.half_period), format_double(r.volume), format_double(r.gap),
                    r.underflow ? "1" : "0"});
  return out;
}

std::string sweep_json(double lambda, const std::vector<SweepRow>& rows) {
  JsonWriter w;
  w.string("format", "syt-sweep");
  w.string("version", version());
  w.number("lambda", lambda);
  w.open_array("rows");
  for (const auto& r : rows) {
    w.open_element();
    w.number("ell", r.ell);
    w.number("K", r.K);
    w.number("log_K", r.log_K);
    w.number("half_period", r.half_period);
    w.number("volume", r.volume);
    w.number("gap_8pilambda", r.gap);
    w.boolean("underflow", r.underflow);
    w.close();
  }
  w.close(']');
  return w.finish();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
  if (!out) throw DomainError("write failed for " + path);
}

} // namespace syt
