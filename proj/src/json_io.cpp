#include "mub/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace mub {

using nlohmann::json;

json matrix_to_json(const DenseMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

DenseMatrix matrix_from_json(const json& j) {
  long rows = static_cast<long>(j.size());
  long cols = rows ? static_cast<long>(j.at(0).size()) : 0;
  DenseMatrix M(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c)
      M(r, c) = std::complex<double>(j.at(r).at(c).at(0).get<double>(), j.at(r).at(c).at(1).get<double>());
  return M;
}

json to_json(const PhasedSpinOp& op) {
  return json{{"d", op.index.d}, {"j", op.index.j}, {"k", op.index.k}, {"phase_exp", op.phase_exp}};
}

namespace {

json label_json(const ClassLabel& l) { return l.str(); }

ClassLabel label_from_string(const std::string& s, long n) {
  if (s == "inf") return ClassLabel::infinity();
  if (static_cast<long>(s.size()) != n) throw std::invalid_argument("class label '" + s + "' has wrong digit count");
  std::vector<long> digits;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("class label '" + s + "' is not a digit string");
    digits.push_back(c - '0');
  }
  return ClassLabel::of(std::move(digits));
}

}  // namespace

json family_to_json(const MubFamily& fam) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = fam.p;
  j["n"] = fam.n;
  j["d"] = fam.d;
  j["poly"] = fam.ctx ? json(fam.ctx->poly().coeffs) : json(nullptr);
  if (fam.nonresidue) j["D"] = *fam.nonresidue;
  json classes = json::array();
  for (const auto& cls : fam.classes) {
    json c;
    c["label"] = label_json(cls.label);
    json gens = json::array();
    for (const auto& g : cls.generators) gens.push_back(g.flat());
    c["generators"] = std::move(gens);
    c["members"] = cls.members;
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  return j;
}

MubFamily family_from_json(const json& j) {
  MubFamily fam;
  fam.p = j.at("p").get<long>();
  fam.n = j.at("n").get<long>();
  fam.d = j.at("d").get<long>();
  if (j.contains("poly") && !j.at("poly").is_null())
    fam.ctx = FieldContext::create(ZpPolynomial{fam.p, j.at("poly").get<std::vector<long>>()});
  if (j.contains("D")) fam.nonresidue = j.at("D").get<long>();
  for (const auto& c : j.at("classes")) {
    CommutingClass cls;
    cls.p = fam.p;
    cls.n = fam.n;
    cls.label = label_from_string(c.at("label").get<std::string>(), fam.n);
    for (const auto& g : c.at("generators")) cls.generators.push_back(TensorSpinIndex::from_flat(fam.p, g.get<std::vector<long>>()));
    cls.members = c.at("members").get<std::vector<std::vector<long>>>();
    fam.classes.push_back(std::move(cls));
  }
  fam.build_lookup();
  return fam;
}

json family_with_projections_json(const MubFamily& fam, const std::vector<ProjectionFamily>& projs,
                                  bool include_matrices) {
  json j = family_to_json(fam);
  for (size_t i = 0; i < projs.size(); ++i) {
    json& c = j.at("classes").at(i);
    MUBasis basis = extract_basis(projs[i]);
    json vecs = json::array();
    for (const auto& v : basis.vectors) vecs.push_back(vector_to_json(v));
    c["basis"] = std::move(vecs);
    if (include_matrices) {
      json ps = json::array();
      for (const auto& P : projs[i].projections) ps.push_back(matrix_to_json(P));
      c["projections"] = std::move(ps);
    }
  }
  return j;
}

json record_to_json(const MeasurementRecord& rec) {
  json j;
  j["exact"] = rec.exact;
  if (rec.shots) j["shots"] = *rec.shots;
  if (rec.seed) j["seed"] = *rec.seed;
  if (!rec.rng.empty()) j["rng"] = rec.rng;
  json probs;
  for (const auto& [label, pr] : rec.probs) probs[label.str()] = pr;
  j["probs"] = std::move(probs);
  return j;
}

std::string grid_csv(const MubFamily& fam) {
  std::ostringstream os;
  long d = fam.d;
  auto digits = [&](long idx) {
    std::string s(fam.n, '0');
    for (long t = fam.n - 1; t >= 0; --t) {
      s[t] = static_cast<char>('0' + idx % fam.p);
      idx /= fam.p;
    }
    return s;
  };
  os << "jk";
  for (long col = 0; col < d; ++col) os << "," << digits(col);
  os << "\n";
  for (long row = 0; row < d; ++row) {
    os << digits(row);
    for (long col = 0; col < d; ++col) {
      os << ",";
      if (row == 0 && col == 0) continue;  // the zero vector lies in every class
      std::vector<long> w(2 * fam.n);
      long r = row, c = col;
      for (long t = fam.n - 1; t >= 0; --t) {
        w[2 * t] = r % fam.p;
        w[2 * t + 1] = c % fam.p;
        r /= fam.p;
        c /= fam.p;
      }
      os << fam.label_of(w).str();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace mub
