#include "elastica/srvt.hpp"

#include <cmath>
#include <string>

#include "elastica/constants.hpp"
#include "elastica/metric.hpp"

namespace elastica {

namespace {
constexpr double kConstraintRel = 1e-10;
constexpr double kImmersionRel = 1e-10;  // against the mean of e^2 + f^2
}  // namespace

SqrtVelocityPair::SqrtVelocityPair(Eigen::VectorXd e, Eigen::VectorXd f)
    : e_(std::move(e)), f_(std::move(f)) {
  const int n = static_cast<int>(e_.size());
  if (n < 2 || f_.size() != n)
    throw ValidationError("srv pair: e and f must share a length >= 2");
  if (!e_.allFinite() || !f_.allFinite())
    throw ValidationError("srv pair: non-finite component");

  const double scale = e_.squaredNorm() + f_.squaredNorm();
  const double closed_re = (e_.array().square() - f_.array().square()).sum();
  const double closed_im = (e_.array() * f_.array()).sum();
  if (std::abs(closed_re) > kConstraintRel * scale)
    throw ConstraintViolation("srv pair: sum(e^2 - f^2) = " + std::to_string(closed_re) +
                              " violates closedness (scale " + std::to_string(scale) + ")");
  if (std::abs(closed_im) > kConstraintRel * scale)
    throw ConstraintViolation("srv pair: sum(e*f) = " + std::to_string(closed_im) +
                              " violates closedness (scale " + std::to_string(scale) + ")");

  const double min_sq = (e_.array().square() + f_.array().square()).minCoeff();
  if (min_sq <= kImmersionRel * scale / n)
    throw ConstraintViolation("srv pair: component " + std::to_string(min_sq) +
                              " too close to zero (non-immersed)");
}

double SqrtVelocityPair::weighted_square_sum() const {
  return (e_.squaredNorm() + f_.squaredNorm()) * (kTwoPi / n());
}

Polygon phi(const SqrtVelocityPair& s) {
  const int n = s.n();
  const double w = kTwoPi / n;
  Eigen::MatrixXd vertices(n, 2);
  double x = 0.0, y = 0.0;
  for (int i = 0; i < n; ++i) {
    vertices(i, 0) = x;
    vertices(i, 1) = y;
    const double e = s.e()[i], f = s.f()[i];
    x += 0.5 * (e * e - f * f) * w;  // Re (1/2)(e + i f)^2 w
    y += e * f * w;                  // Im (1/2)(e + i f)^2 w
  }
  vertices.rowwise() -= vertices.colwise().mean();
  return Polygon(GridInfo(n, 2), std::move(vertices), true);
}

VertexField phi_tangent(const SqrtVelocityPair& s, const Eigen::VectorXd& de,
                        const Eigen::VectorXd& df) {
  const int n = s.n();
  if (de.size() != n || df.size() != n)
    throw ValidationError("phi_tangent: direction size mismatch");

  const double scale =
      std::sqrt(s.e().squaredNorm() + s.f().squaredNorm()) *
      std::sqrt(de.squaredNorm() + df.squaredNorm());
  const double lin_re = (s.e().cwiseProduct(de) - s.f().cwiseProduct(df)).sum();
  const double lin_im = (s.e().cwiseProduct(df) + s.f().cwiseProduct(de)).sum();
  if (std::abs(lin_re) > kConstraintRel * scale || std::abs(lin_im) > kConstraintRel * scale)
    throw ConstraintViolation("phi_tangent: direction violates linearized closedness (re " +
                              std::to_string(lin_re) + ", im " + std::to_string(lin_im) + ")");

  const double w = kTwoPi / n;
  Eigen::MatrixXd values(n, 2);
  double x = 0.0, y = 0.0;
  for (int i = 0; i < n; ++i) {
    values(i, 0) = x;
    values(i, 1) = y;
    // (e + i f)(de + i df) w
    x += (s.e()[i] * de[i] - s.f()[i] * df[i]) * w;
    y += (s.e()[i] * df[i] + s.f()[i] * de[i]) * w;
  }
  values.rowwise() -= values.colwise().mean();
  return VertexField(GridInfo(n, 2), std::move(values), true);
}

IsometryDefect pullback_isometry_defect(const SqrtVelocityPair& s, const Eigen::VectorXd& de,
                                        const Eigen::VectorXd& df) {
  const Polygon c = phi(s);
  const VertexField h = phi_tangent(s, de, df);
  const double flat = (de.squaredNorm() + df.squaredNorm()) * (kTwoPi / s.n());
  return IsometryDefect{metric(c, h, h), flat, c.total_length()};
}

}  // namespace elastica
