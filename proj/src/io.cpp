#include "povmcoh/io.hpp"

#include <fstream>
#include <sstream>

namespace povmcoh {

Json matrix_to_json(const CMatrix &m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json &j) {
  if (!j.is_array() || j.empty())
    throw ValidationError("matrix_from_json: expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols)
      throw ValidationError("matrix_from_json: ragged rows");
    for (int c = 0; c < cols; ++c) {
      const Json &e = j[r][c];
      if (!e.is_array() || e.size() != 2)
        throw ValidationError("matrix_from_json: entries must be [re, im] pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Json povm_to_json(const Povm &p) {
  Json j;
  j["dim"] = p.dim();
  j["effects"] = Json::array();
  for (const auto &e : p.effects())
    j["effects"].push_back(matrix_to_json(e));
  return j;
}

Povm povm_from_json(const Json &j) {
  const int dim = j.at("dim").get<int>();
  std::vector<CMatrix> effects;
  for (const auto &e : j.at("effects"))
    effects.push_back(matrix_from_json(e));
  return Povm(dim, std::move(effects));
}

Json state_to_json(const DensityMatrix &rho) {
  Json j;
  j["dim"] = rho.dim();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

DensityMatrix state_from_json(const Json &j) {
  const CMatrix m = matrix_from_json(j.at("matrix"));
  if (j.contains("dim") && j.at("dim").get<int>() != m.rows())
    throw ValidationError("state_from_json: dim does not match matrix");
  return DensityMatrix(m);
}

Json kraus_to_json(const std::vector<CMatrix> &kraus) {
  Json j;
  j["dim"] = kraus.empty() ? 0 : static_cast<int>(kraus[0].rows());
  j["kraus"] = Json::array();
  for (const auto &k : kraus)
    j["kraus"].push_back(matrix_to_json(k));
  return j;
}

std::vector<CMatrix> kraus_from_json(const Json &j) {
  std::vector<CMatrix> kraus;
  for (const auto &k : j.at("kraus"))
    kraus.push_back(matrix_from_json(k));
  if (kraus.empty())
    throw ValidationError("kraus_from_json: empty Kraus list");
  if (j.contains("dim") && j.at("dim").get<int>() != kraus[0].rows())
    throw ValidationError("kraus_from_json: dim does not match operators");
  return kraus;
}

Json extension_to_json(const NaimarkExtension &x) {
  Json j;
  j["d"] = x.d;
  j["d_prime"] = x.d_prime;
  j["kind"] = to_string(x.kind);
  j["embedding"] = x.embedding;
  j["projectors"] = Json::array();
  for (const auto &p : x.projectors)
    j["projectors"].push_back(matrix_to_json(p));
  return j;
}

NaimarkExtension extension_from_json(const Json &j) {
  NaimarkExtension x;
  x.d = j.at("d").get<int>();
  x.d_prime = j.at("d_prime").get<int>();
  x.kind = j.at("kind").get<std::string>() == "canonical"
               ? ExtensionKind::canonical
               : ExtensionKind::minimal;
  if (j.contains("embedding"))
    x.embedding = j.at("embedding").get<std::string>();
  for (const auto &p : j.at("projectors"))
    x.projectors.push_back(matrix_from_json(p));
  return x;
}

Json coherence_report_to_json(const CoherenceReport &report) {
  Json j;
  j["value"] = report.value;
  j["probs"] = std::vector<double>(report.probs.data(),
                                   report.probs.data() + report.probs.size());
  j["branch_entropies"] = report.branch_entropies;
  j["state_entropy"] = report.state_entropy;
  return j;
}

Json pic_verdict_to_json(const PicVerdict &verdict, bool include_choi) {
  Json j;
  j["feasible"] = verdict.feasible;
  j["marginal"] = verdict.marginal;
  j["slack"] = verdict.slack;
  if (!verdict.note.empty())
    j["note"] = verdict.note;
  if (include_choi && verdict.choi)
    j["choi"] = matrix_to_json(verdict.choi->m);
  return j;
}

std::string landscape_to_csv(const std::vector<LandscapeSample> &samples) {
  std::ostringstream out;
  out.precision(12);
  out << "theta,phi,bx,by,bz,value\n";
  for (const auto &s : samples)
    out << s.theta << ',' << s.phi << ',' << s.bloch(0) << ',' << s.bloch(1)
        << ',' << s.bloch(2) << ',' << s.value << '\n';
  return out.str();
}

Json landscape_to_json(const std::vector<LandscapeSample> &samples) {
  Json arr = Json::array();
  for (const auto &s : samples) {
    Json j;
    j["theta"] = s.theta;
    j["phi"] = s.phi;
    j["bx"] = s.bloch(0);
    j["by"] = s.bloch(1);
    j["bz"] = s.bloch(2);
    j["value"] = s.value;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json load_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void save_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw ValidationError("cannot write file: " + path);
  out << text;
}

} // namespace povmcoh
