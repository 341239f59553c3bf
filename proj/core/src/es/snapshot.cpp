#include "linevo/es/snapshot.hpp"

#include <string>

#include "linevo/common/errors.hpp"
#include "linevo/common/numfmt.hpp"

namespace linevo::es {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected a JSON array of reals");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  return arr;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n * n)) {
    throw InvalidArgument("expected a row-major " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = j[static_cast<std::size_t>(r * n + c)].get<double>();
  return m;
}

}  // namespace

json covariance_to_json(const Covariance& cov) {
  switch (cov.kind) {
    case Variant::kCsa:
      return {{"kind", "unit"}};
    case Variant::kSepCma:
      return {{"kind", "diag"}, {"values", vector_to_json(cov.diag)}};
    case Variant::kFullCma:
      return {{"kind", "full"},
              {"matrix", matrix_to_json(cov.matrix)},
              {"basis", matrix_to_json(cov.basis)},
              {"scales", vector_to_json(cov.scales)},
              {"stale", cov.stale}};
  }
  return {};
}

Covariance covariance_from_json(const json& j, Variant kind, Eigen::Index n) {
  const std::string k = j.at("kind").get<std::string>();
  Covariance cov = Covariance::identity(kind, n);
  switch (kind) {
    case Variant::kCsa:
      if (k != "unit") throw InvalidArgument("CSA expects a unit covariance payload");
      break;
    case Variant::kSepCma:
      if (k != "diag") throw InvalidArgument("sep-CMA expects a diag covariance payload");
      cov.diag = vector_from_json(j.at("values"));
      if (cov.diag.size() != n) throw InvalidArgument("diag payload has wrong length");
      cov.scales = cov.diag.cwiseSqrt();
      break;
    case Variant::kFullCma:
      if (k != "full") throw InvalidArgument("CMA expects a full covariance payload");
      cov.matrix = matrix_from_json(j.at("matrix"), n);
      if (j.contains("basis")) {
        cov.basis = matrix_from_json(j.at("basis"), n);
        cov.scales = vector_from_json(j.at("scales"));
        cov.stale = j.value("stale", std::uint64_t{0});
      } else {
        cov.refresh_eigen(0);
      }
      break;
  }
  return cov;
}

json snapshot_to_json(const Strategy& s) {
  return {{"variant", std::string(variant_name(s.params.variant))},
          {"n", s.params.n},
          {"lambda", s.params.lambda},
          {"mu", s.params.mu},
          {"g", s.state.generation},
          {"m", vector_to_json(s.state.mean)},
          {"sigma", s.state.sigma},
          {"cov", covariance_to_json(s.state.cov)},
          {"p_sigma", vector_to_json(s.state.p_sigma)},
          {"p_c", vector_to_json(s.state.p_c)},
          {"master_seed", std::to_string(s.state.master_seed)}};
}

Strategy snapshot_from_json(const json& j) {
  const Variant variant = parse_variant(j.at("variant").get<std::string>());
  const auto n = j.at("n").get<std::size_t>();
  const auto lambda = j.at("lambda").get<std::size_t>();
  Strategy s;
  s.params = make_params(variant, n, lambda);
  if (j.at("mu").get<std::size_t>() != s.params.mu) throw InvalidArgument("snapshot mu inconsistent with lambda");
  const auto dim = static_cast<Eigen::Index>(n);
  s.state.generation = j.at("g").get<std::uint64_t>();
  s.state.mean = vector_from_json(j.at("m"));
  s.state.sigma = j.at("sigma").get<double>();
  s.state.cov = covariance_from_json(j.at("cov"), variant, dim);
  s.state.p_sigma = vector_from_json(j.at("p_sigma"));
  s.state.p_c = vector_from_json(j.at("p_c"));
  s.state.master_seed = parse_u64(j.at("master_seed").get<std::string>());
  if (s.state.mean.size() != dim || s.state.p_sigma.size() != dim || s.state.p_c.size() != dim) {
    throw InvalidArgument("snapshot vector lengths inconsistent with n");
  }
  if (!(s.state.sigma > 0.0)) throw InvalidArgument("snapshot sigma must be positive");
  return s;
}

}  // namespace linevo::es
