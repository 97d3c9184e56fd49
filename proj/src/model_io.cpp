#include "seizembed/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seizembed {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

constexpr const char* kMagic = "seizembed-model v1";

void write_matrix(std::ostream& out, const char* name, const Eigen::MatrixXd& m) {
  out << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) throw std::runtime_error("model file: unexpected end of file");
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  }

  // "key rest..." where key must match
  std::string expect(const std::string& key) {
    const std::string s = line();
    if (s.rfind(key, 0) != 0 || (s.size() > key.size() && s[key.size()] != ' '))
      throw std::runtime_error("model file: expected '" + key + "', got '" + s + "'");
    return s.size() > key.size() ? s.substr(key.size() + 1) : std::string();
  }

  long expect_long(const std::string& key) {
    const std::string v = expect(key);
    std::size_t used = 0;
    const long out = std::stol(v, &used);
    if (used != v.size()) throw std::runtime_error("model file: bad integer for '" + key + "'");
    return out;
  }

  double expect_double(const std::string& key) { return parse_double(expect(key), key); }

  std::uint64_t expect_u64(const std::string& key) {
    const std::string v = expect(key);
    std::size_t used = 0;
    const unsigned long long out = std::stoull(v, &used);
    if (used != v.size()) throw std::runtime_error("model file: bad integer for '" + key + "'");
    return out;
  }

  Eigen::MatrixXd expect_matrix(const std::string& name) {
    std::istringstream hdr(expect(name));
    Eigen::Index rows = 0, cols = 0;
    if (!(hdr >> rows >> cols) || rows < 0 || cols < 0)
      throw std::runtime_error("model file: bad matrix header for '" + name + "'");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      std::istringstream row(line());
      for (Eigen::Index c = 0; c < cols; ++c) {
        std::string tok;
        if (!(row >> tok))
          throw std::runtime_error("model file: short matrix row in '" + name + "'");
        m(r, c) = parse_double(tok, name);
      }
    }
    return m;
  }

 private:
  static double parse_double(const std::string& v, const std::string& what) {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size())
      throw std::runtime_error("model file: bad number for '" + what + "'");
    return out;
  }

  std::istream& in_;
};

void write_meta(std::ostream& out, const TrainMeta& meta) {
  out << "seed " << meta.seed << '\n'
      << "n_rows " << meta.n_rows << '\n'
      << "n_used " << meta.n_used << '\n'
      << "n_positive " << meta.n_positive << '\n'
      << "converged " << (meta.converged ? 1 : 0) << '\n'
      << "note " << meta.note << '\n';
}

TrainMeta read_meta(Reader& r) {
  TrainMeta meta;
  meta.seed = r.expect_u64("seed");
  meta.n_rows = r.expect_long("n_rows");
  meta.n_used = r.expect_long("n_used");
  meta.n_positive = r.expect_long("n_positive");
  meta.converged = r.expect_long("converged") != 0;
  meta.note = r.expect("note");
  return meta;
}

}  // namespace

void save_quantile_map(std::ostream& out, const QuantileMap& map) {
  out << kMagic << '\n' << "object quantile_map\n";
  out << "fitted_on " << map.fitted_on << '\n';
  write_matrix(out, "landmarks", map.landmarks);
  out << "end quantile_map\n";
}

QuantileMap load_quantile_map(std::istream& in) {
  Reader r(in);
  if (r.line() != kMagic) throw std::runtime_error("model file: bad magic");
  if (r.expect("object") != "quantile_map") throw std::runtime_error("model file: not a quantile_map");
  QuantileMap map;
  map.fitted_on = r.expect_long("fitted_on");
  map.landmarks = r.expect_matrix("landmarks");
  r.expect("end");
  return map;
}

void save_embedder(std::ostream& out, const PeriodicEmbedder& e) {
  out << kMagic << '\n' << "object periodic_embedder\n";
  out << "d " << e.d << '\n';
  out << "sigma " << format_double(e.sigma) << '\n';
  out << "seed " << e.seed << '\n';
  write_matrix(out, "coeffs", e.coeffs);
  out << "end periodic_embedder\n";
}

PeriodicEmbedder load_embedder(std::istream& in) {
  Reader r(in);
  if (r.line() != kMagic) throw std::runtime_error("model file: bad magic");
  if (r.expect("object") != "periodic_embedder")
    throw std::runtime_error("model file: not a periodic_embedder");
  PeriodicEmbedder e;
  e.d = static_cast<int>(r.expect_long("d"));
  e.sigma = r.expect_double("sigma");
  e.seed = r.expect_u64("seed");
  e.coeffs = r.expect_matrix("coeffs");
  if (e.coeffs.cols() != e.d / 2) throw std::runtime_error("model file: embedder shape mismatch");
  r.expect("end");
  return e;
}

void save_model(std::ostream& out, const TrainedModel& model) {
  out << kMagic << '\n' << "object model\n";
  out << "kind " << to_string(model.kind) << '\n';
  out << "input_dim " << model.input_dim << '\n';
  write_meta(out, model.meta);

  std::visit(
      [&](const auto& impl) {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          out << "bias " << format_double(impl.bias) << '\n';
          out << "lambda " << format_double(impl.lambda) << '\n';
          out << "iterations " << impl.iterations << '\n';
          write_matrix(out, "weights", impl.weights);
        } else if constexpr (std::is_same_v<T, MlpModel>) {
          out << "layers " << impl.weights.size() << '\n';
          for (std::size_t l = 0; l < impl.weights.size(); ++l) {
            write_matrix(out, ("w" + std::to_string(l)).c_str(), impl.weights[l]);
            write_matrix(out, ("b" + std::to_string(l)).c_str(), impl.biases[l]);
          }
        } else if constexpr (std::is_same_v<T, SvmModel>) {
          out << "gamma " << format_double(impl.gamma) << '\n';
          out << "coef0 " << format_double(impl.coef0) << '\n';
          out << "degree " << impl.degree << '\n';
          out << "bias " << format_double(impl.bias) << '\n';
          out << "kkt_violation " << format_double(impl.kkt_violation) << '\n';
          out << "sv_indices";
          for (int idx : impl.sv_indices) out << ' ' << idx;
          out << '\n';
          write_matrix(out, "dual_coef", impl.dual_coef);
          write_matrix(out, "support_vectors", impl.support_vectors);
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          out << "k " << impl.k << '\n';
          out << "labels";
          for (int v : impl.labels) out << ' ' << v;
          out << '\n';
          write_matrix(out, "points", impl.points);
        } else if constexpr (std::is_same_v<T, GnbModel>) {
          out << "log_prior " << format_double(impl.log_prior[0]) << ' '
              << format_double(impl.log_prior[1]) << '\n';
          write_matrix(out, "mean", impl.mean);
          write_matrix(out, "variance", impl.variance);
        } else {
          out << "binarize " << format_double(impl.binarize) << '\n';
          out << "log_prior " << format_double(impl.log_prior[0]) << ' '
              << format_double(impl.log_prior[1]) << '\n';
          write_matrix(out, "log_theta", impl.log_theta);
          write_matrix(out, "log_one_minus", impl.log_one_minus);
        }
      },
      model.impl);
  out << "end model\n";
}

TrainedModel load_model(std::istream& in) {
  Reader r(in);
  if (r.line() != kMagic) throw std::runtime_error("model file: bad magic");
  if (r.expect("object") != "model") throw std::runtime_error("model file: not a model");

  TrainedModel model;
  model.kind = model_kind_from_string(r.expect("kind"));
  model.input_dim = static_cast<int>(r.expect_long("input_dim"));
  model.meta = read_meta(r);
  model.config.model_kind = model.kind;
  model.config.seed = model.meta.seed;

  switch (model.kind) {
    case ModelKind::LR: {
      LogisticModel m;
      m.bias = r.expect_double("bias");
      m.lambda = r.expect_double("lambda");
      m.iterations = static_cast<int>(r.expect_long("iterations"));
      m.weights = r.expect_matrix("weights");
      model.impl = std::move(m);
      break;
    }
    case ModelKind::MLP: {
      MlpModel m;
      const long layers = r.expect_long("layers");
      for (long l = 0; l < layers; ++l) {
        m.weights.push_back(r.expect_matrix("w" + std::to_string(l)));
        m.biases.push_back(r.expect_matrix("b" + std::to_string(l)));
      }
      model.impl = std::move(m);
      break;
    }
    case ModelKind::SVM: {
      SvmModel m;
      m.gamma = r.expect_double("gamma");
      m.coef0 = r.expect_double("coef0");
      m.degree = static_cast<int>(r.expect_long("degree"));
      m.bias = r.expect_double("bias");
      m.kkt_violation = r.expect_double("kkt_violation");
      {
        std::istringstream idx(r.expect("sv_indices"));
        int v;
        while (idx >> v) m.sv_indices.push_back(v);
      }
      m.dual_coef = r.expect_matrix("dual_coef");
      m.support_vectors = r.expect_matrix("support_vectors");
      model.impl = std::move(m);
      break;
    }
    case ModelKind::KNN: {
      KnnModel m;
      m.k = static_cast<int>(r.expect_long("k"));
      {
        std::istringstream lab(r.expect("labels"));
        int v;
        while (lab >> v) m.labels.push_back(v);
      }
      m.points = r.expect_matrix("points");
      model.impl = std::move(m);
      break;
    }
    case ModelKind::GNB: {
      GnbModel m;
      std::istringstream lp(r.expect("log_prior"));
      lp >> m.log_prior[0] >> m.log_prior[1];
      m.mean = r.expect_matrix("mean");
      m.variance = r.expect_matrix("variance");
      model.impl = std::move(m);
      break;
    }
    case ModelKind::BNB: {
      BnbModel m;
      m.binarize = r.expect_double("binarize");
      std::istringstream lp(r.expect("log_prior"));
      lp >> m.log_prior[0] >> m.log_prior[1];
      m.log_theta = r.expect_matrix("log_theta");
      m.log_one_minus = r.expect_matrix("log_one_minus");
      model.impl = std::move(m);
      break;
    }
  }
  r.expect("end");
  return model;
}

std::string to_text(const QuantileMap& map) {
  std::ostringstream ss;
  save_quantile_map(ss, map);
  return ss.str();
}

std::string to_text(const PeriodicEmbedder& e) {
  std::ostringstream ss;
  save_embedder(ss, e);
  return ss.str();
}

std::string to_text(const TrainedModel& model) {
  std::ostringstream ss;
  save_model(ss, model);
  return ss.str();
}

void save_model_file(const std::string& path, const TrainedModel& model) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_model(out, model);
}

TrainedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_model(in);
}

}  // namespace seizembed
