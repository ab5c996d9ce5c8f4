#include "qpt/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace qpt {

namespace {

const Complex kI(0.0, 1.0);

void check_channel_shape(const KrausChannel& ch) {
  if (ch.n < 1 || ch.n > 6) throw SizeError("channel: n out of range");
  if (ch.operators.empty()) throw ValidationError("channel: no Kraus operators");
  const Eigen::Index d = ch.dim();
  for (const Matrix& a : ch.operators) {
    if (a.rows() != d || a.cols() != d) {
      throw SizeError("channel: Kraus operator shape mismatch");
    }
  }
}

void check_chi_shape(const ChiMatrix& c) {
  if (c.n < 1 || c.n > 6) throw SizeError("chi: n out of range");
  const Eigen::Index d2 = c.dim() * c.dim();
  if (c.chi.rows() != d2 || c.chi.cols() != d2) {
    throw SizeError("chi: matrix must be 4^n x 4^n");
  }
}

double parse_param(const std::string& text, const std::string& name) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("channel spec: bad numeric parameter for " + name);
  }
}

}  // namespace

ChannelSpec ChannelSpec::parse(const std::string& text) {
  const auto open = text.find('(');
  std::string name = (open == std::string::npos) ? text : text.substr(0, open);
  std::string args;
  if (open != std::string::npos) {
    if (text.back() != ')') {
      throw ValidationError("channel spec: missing closing parenthesis");
    }
    args = text.substr(open + 1, text.size() - open - 2);
  }
  ChannelSpec spec;
  if (name == "identity") {
    spec.kind = Kind::identity;
    if (!args.empty()) throw ValidationError("channel spec: identity takes no parameter");
    return spec;
  }
  if (name == "bit_flip" || name == "depolarizing" || name == "amplitude_damping" ||
      name == "phase_damping") {
    spec.kind = name == "bit_flip" ? Kind::bit_flip
                : name == "depolarizing" ? Kind::depolarizing
                : name == "amplitude_damping" ? Kind::amplitude_damping
                                              : Kind::phase_damping;
    spec.parameter = parse_param(args, name);
    if (spec.parameter < 0.0 || spec.parameter > 1.0) {
      throw ValidationError("channel spec: parameter of " + name +
                            " must lie in [0, 1]");
    }
    return spec;
  }
  if (name == "unitary") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("channel spec: unitary needs (axis,angle)");
    }
    std::string axis = args.substr(0, comma);
    if (axis != "x" && axis != "y" && axis != "z") {
      throw ValidationError("channel spec: unitary axis must be x, y or z");
    }
    spec.kind = Kind::unitary;
    spec.axis = axis[0];
    spec.parameter = parse_param(args.substr(comma + 1), name);
    return spec;
  }
  if (name == "kraus_file") {
    if (args.empty()) throw ValidationError("channel spec: kraus_file needs a path");
    spec.kind = Kind::kraus_file;
    spec.path = args;
    return spec;
  }
  throw ValidationError("channel spec: unknown channel '" + name + "'");
}

std::string ChannelSpec::to_string() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::bit_flip: return "bit_flip(" + format_double(parameter) + ")";
    case Kind::depolarizing: return "depolarizing(" + format_double(parameter) + ")";
    case Kind::amplitude_damping:
      return "amplitude_damping(" + format_double(parameter) + ")";
    case Kind::phase_damping:
      return "phase_damping(" + format_double(parameter) + ")";
    case Kind::unitary:
      return std::string("unitary(") + axis + "," + format_double(parameter) + ")";
    case Kind::kraus_file: return "kraus_file(" + path + ")";
  }
  return "?";
}

ChiMatrix kraus_to_chi(const KrausChannel& ch) {
  check_channel_shape(ch);
  const Eigen::Index d = ch.dim();
  const auto basis = pauli_basis(ch.n);
  const Eigen::Index b = static_cast<Eigen::Index>(basis.size());
  Matrix chi = Matrix::Zero(b, b);
  for (const Matrix& a : ch.operators) {
    Vector coeff(b);  // a_im = Tr(Em^dag Ai) / d
    for (Eigen::Index m = 0; m < b; ++m) {
      coeff(m) = (basis[static_cast<std::size_t>(m)].adjoint() * a).trace() /
                 static_cast<double>(d);
    }
    chi.noalias() += coeff * coeff.adjoint();
  }
  return ChiMatrix{ch.n, std::move(chi)};
}

KrausChannel chi_to_kraus(const ChiMatrix& c, double tol) {
  check_chi_shape(c);
  if (!is_hermitian(c.chi, 1e-8)) {
    throw ValidationError("chi_to_kraus: chi not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c.chi + c.chi.adjoint()));
  const auto& vals = es.eigenvalues();
  if (vals.minCoeff() < -tol) {
    throw ValidationError("chi_to_kraus: chi not PSD, most negative eigenvalue " +
                          std::to_string(vals.minCoeff()));
  }
  const auto basis = pauli_basis(c.n);
  const Eigen::Index d = c.dim();
  KrausChannel out;
  out.n = c.n;
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (vals(k) <= tol) continue;  // numerical zeros dropped
    Matrix a = Matrix::Zero(d, d);
    const double w = std::sqrt(vals(k));
    for (Eigen::Index m = 0; m < static_cast<Eigen::Index>(basis.size()); ++m) {
      a += w * es.eigenvectors()(m, k) * basis[static_cast<std::size_t>(m)];
    }
    out.operators.push_back(std::move(a));
  }
  if (out.operators.empty()) {
    // The zero map has no Kraus operators; keep an explicit zero so callers
    // can still apply it.
    out.operators.push_back(Matrix::Zero(d, d));
  }
  return out;
}

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho,
                              Eigen::Index ancilla_dim) {
  check_channel_shape(ch);
  const Eigen::Index d = ch.dim();
  if (ancilla_dim < 1 || rho.matrix.rows() != d * ancilla_dim) {
    throw SizeError("apply_channel: state dimension is not channel_dim * ancilla_dim");
  }
  Matrix out = Matrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  const Matrix id = Matrix::Identity(ancilla_dim, ancilla_dim);
  for (const Matrix& a : ch.operators) {
    const Matrix ext = ancilla_dim == 1 ? a : tensor_product(a, id);
    out.noalias() += ext * rho.matrix * ext.adjoint();
  }
  return DensityOperator{std::move(out)};
}

DensityOperator apply_channel(const ChiMatrix& c, const DensityOperator& rho,
                              Eigen::Index ancilla_dim) {
  check_chi_shape(c);
  const Eigen::Index d = c.dim();
  if (ancilla_dim < 1 || rho.matrix.rows() != d * ancilla_dim) {
    throw SizeError("apply_channel: state dimension is not channel_dim * ancilla_dim");
  }
  const auto basis = pauli_basis(c.n);
  const Eigen::Index b = static_cast<Eigen::Index>(basis.size());
  const Matrix id = Matrix::Identity(ancilla_dim, ancilla_dim);
  std::vector<Matrix> ext;
  ext.reserve(static_cast<std::size_t>(b));
  for (const Matrix& e : basis) {
    ext.push_back(ancilla_dim == 1 ? e : tensor_product(e, id));
  }
  Matrix out = Matrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  for (Eigen::Index m = 0; m < b; ++m) {
    for (Eigen::Index nn = 0; nn < b; ++nn) {
      const Complex w = c.chi(m, nn);
      if (std::abs(w) == 0.0) continue;
      out.noalias() += w * ext[static_cast<std::size_t>(m)] * rho.matrix *
                       ext[static_cast<std::size_t>(nn)].adjoint();
    }
  }
  return DensityOperator{std::move(out)};
}

DensityOperator choi_state(const KrausChannel& ch) {
  check_channel_shape(ch);
  if (ch.n > 3) throw SizeError("choi_state: n > 3 unsupported");
  const Eigen::Index d = ch.dim();
  Vector phi = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  DensityOperator bell{phi * phi.adjoint()};
  return apply_channel(ch, bell, d);
}

ChiMatrix choi_to_chi(const Matrix& rho_e, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  if (rho_e.rows() != d * d || rho_e.cols() != d * d) {
    throw SizeError("choi_to_chi: state dimension is not d^2");
  }
  const auto basis = pauli_basis(n);
  const Eigen::Index b = static_cast<Eigen::Index>(basis.size());
  Matrix u(d * d, b);
  for (Eigen::Index m = 0; m < b; ++m) {
    const Matrix& e = basis[static_cast<std::size_t>(m)];
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) u(r * d + c, m) = e(r, c);
  }
  Matrix chi = u.adjoint() * rho_e * u / static_cast<double>(d);
  return ChiMatrix{n, std::move(chi)};
}

ChiMatrix choi_to_chi(const DensityOperator& rho_e, int n) {
  return choi_to_chi(rho_e.matrix, n);
}

KrausChannel named_channel(const ChannelSpec& spec) {
  using Kind = ChannelSpec::Kind;
  KrausChannel ch;
  ch.n = 1;
  const double p = spec.parameter;
  switch (spec.kind) {
    case Kind::identity:
      ch.operators = {pauli_i()};
      return ch;
    case Kind::bit_flip:
      ch.operators = {std::sqrt(1.0 - p) * pauli_i(), std::sqrt(p) * pauli_x()};
      return ch;
    case Kind::depolarizing:
      ch.operators = {std::sqrt(1.0 - p) * pauli_i(),
                      std::sqrt(p / 3.0) * pauli_x(),
                      std::sqrt(p / 3.0) * pauli_y(),
                      std::sqrt(p / 3.0) * pauli_z()};
      return ch;
    case Kind::amplitude_damping: {
      Matrix a0(2, 2), a1(2, 2);
      a0 << 1, 0, 0, std::sqrt(1.0 - p);
      a1 << 0, std::sqrt(p), 0, 0;
      ch.operators = {a0, a1};
      return ch;
    }
    case Kind::phase_damping: {
      Matrix k0(2, 2), k1(2, 2);
      k0 << 1, 0, 0, std::sqrt(1.0 - p);
      k1 << 0, 0, 0, std::sqrt(p);
      ch.operators = {k0, k1};
      return ch;
    }
    case Kind::unitary: {
      const Matrix& axis = spec.axis == 'x'   ? pauli_x()
                           : spec.axis == 'y' ? pauli_y()
                                              : pauli_z();
      Matrix u = std::cos(p / 2.0) * pauli_i() - kI * std::sin(p / 2.0) * axis;
      ch.operators = {std::move(u)};
      return ch;
    }
    case Kind::kraus_file:
      return load_channel_file(spec.path);
  }
  throw ValidationError("named_channel: unknown kind");
}

ValidityReport validate_channel(const KrausChannel& ch, double tol) {
  check_channel_shape(ch);
  ValidityReport r;
  const Eigen::Index d = ch.dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& a : ch.operators) sum.noalias() += a.adjoint() * a;
  r.tp_deficit = (sum - Matrix::Identity(d, d)).norm();
  r.is_tp = r.tp_deficit <= tol * std::sqrt(static_cast<double>(d));

  const ChiMatrix c = kraus_to_chi(ch);
  r.hermiticity_residual = (c.chi - c.chi.adjoint()).norm();
  r.is_hermitian = r.hermiticity_residual <= tol;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c.chi + c.chi.adjoint()),
                                           Eigen::EigenvaluesOnly);
  r.min_chi_eigenvalue = es.eigenvalues().minCoeff();
  r.is_cp = r.min_chi_eigenvalue >= -tol;
  return r;
}

ValidityReport validate_chi(const ChiMatrix& c, double tol) {
  check_chi_shape(c);
  ValidityReport r;
  r.hermiticity_residual = (c.chi - c.chi.adjoint()).norm();
  r.is_hermitian = r.hermiticity_residual <= tol;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c.chi + c.chi.adjoint()),
                                           Eigen::EigenvaluesOnly);
  r.min_chi_eigenvalue = es.eigenvalues().minCoeff();
  r.is_cp = r.min_chi_eigenvalue >= -tol;

  // TP condition sum_mn chi_mn En^dag Em = I, assembled with exact Pauli
  // products.
  const Eigen::Index d = c.dim();
  const Eigen::Index b = c.chi.rows();
  Matrix sum = Matrix::Zero(d, d);
  for (Eigen::Index m = 0; m < b; ++m) {
    for (Eigen::Index nn = 0; nn < b; ++nn) {
      const Complex w = c.chi(m, nn);
      if (std::abs(w) == 0.0) continue;
      const auto [prod, phase] =
          pauli_product(PauliString(c.n, static_cast<std::uint64_t>(nn)),
                        PauliString(c.n, static_cast<std::uint64_t>(m)));
      for (Eigen::Index r2 = 0; r2 < d; ++r2) {
        for (Eigen::Index c2 = 0; c2 < d; ++c2) {
          const Complex e = prod.entry(r2, c2);
          if (e != Complex(0, 0)) sum(r2, c2) += w * phase * e;
        }
      }
    }
  }
  r.tp_deficit = (sum - Matrix::Identity(d, d)).norm();
  r.is_tp = r.tp_deficit <= tol * std::sqrt(static_cast<double>(d));
  return r;
}

KrausChannel random_cptp_channel(int n, RandomSource& rng,
                                 Eigen::Index env_dim) {
  if (n < 1 || n > 3) throw SizeError("random_cptp_channel: n out of range");
  const Eigen::Index d = Eigen::Index{1} << n;
  if (env_dim <= 0) env_dim = d * d;
  const Eigen::Index total = d * env_dim;

  // Haar unitary: QR of a complex Ginibre matrix with R-diagonal phase fix.
  Matrix g(total, total);
  for (Eigen::Index r = 0; r < total; ++r)
    for (Eigen::Index c = 0; c < total; ++c)
      g(r, c) = Complex(rng.next_normal(), rng.next_normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < total; ++j) {
    const Complex rjj = rmat(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0) ? rjj / mag : Complex(1, 0);
  }

  // Stinespring: A_i = (I (x) <i|) U (I (x) |0>) with system most significant.
  KrausChannel ch;
  ch.n = n;
  for (Eigen::Index i = 0; i < env_dim; ++i) {
    Matrix a(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) a(r, c) = q(r * env_dim + i, c * env_dim);
    ch.operators.push_back(std::move(a));
  }
  return ch;
}

std::string channel_to_json(const KrausChannel& ch) {
  detail::json j;
  j["n"] = ch.n;
  j["kraus"] = detail::json::array();
  for (const Matrix& a : ch.operators) j["kraus"].push_back(detail::matrix_to_json_obj(a));
  return j.dump();
}

KrausChannel channel_from_json(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::parse_error& e) {
    throw ValidationError(std::string("channel JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("kraus") ||
      !j.at("kraus").is_array()) {
    throw ValidationError("channel JSON: expected {n, kraus: [...]}");
  }
  KrausChannel ch;
  ch.n = j.at("n").get<int>();
  for (const auto& item : j.at("kraus")) {
    ch.operators.push_back(detail::matrix_from_json_obj(item));
  }
  check_channel_shape(ch);
  return ch;
}

std::string chi_to_json(const ChiMatrix& c) {
  detail::json j;
  j["n"] = c.n;
  j["basis"] = "pauli";
  j["chi"] = detail::matrix_to_json_obj(c.chi);
  return j.dump();
}

ChiMatrix chi_from_json(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::parse_error& e) {
    throw ValidationError(std::string("chi JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("chi")) {
    throw ValidationError("chi JSON: expected {n, basis, chi}");
  }
  if (j.value("basis", "pauli") != "pauli") {
    throw ValidationError("chi JSON: only the pauli basis is supported");
  }
  ChiMatrix c{j.at("n").get<int>(), detail::matrix_from_json_obj(j.at("chi"))};
  check_chi_shape(c);
  return c;
}

KrausChannel load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open channel file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return channel_from_json(ss.str());
}

}  // namespace qpt
