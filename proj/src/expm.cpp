#include "tcljc/expm.hpp"

#include <cmath>

namespace tcljc {
namespace {

constexpr double kEntryLimit = 1e150;

void check_overflow(const Matrix& m) {
  if (m.cwiseAbs().maxCoeff() > kEntryLimit)
    throw OverflowError("expm: intermediate entry magnitude exceeds 1e150");
  if (!all_finite(m)) throw OverflowError("expm: non-finite intermediate");
}

void pade3(const Matrix& a, Matrix& u, Matrix& v) {
  const double b[] = {120., 60., 12., 1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a2 = a * a;
  u = a * (b[3] * a2 + b[1] * i);
  v = b[2] * a2 + b[0] * i;
}

void pade5(const Matrix& a, Matrix& u, Matrix& v) {
  const double b[] = {30240., 15120., 3360., 420., 30., 1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a2 = a * a, a4 = a2 * a2;
  u = a * (b[5] * a4 + b[3] * a2 + b[1] * i);
  v = b[4] * a4 + b[2] * a2 + b[0] * i;
}

void pade7(const Matrix& a, Matrix& u, Matrix& v) {
  const double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
  u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i);
  v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i;
}

void pade9(const Matrix& a, Matrix& u, Matrix& v) {
  const double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                      2162160.,     110880.,     3960.,       90.,        1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a2 = a * a, a4 = a2 * a2, a6 = a4 * a2, a8 = a6 * a2;
  u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i);
  v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
  const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                      1187353796428800.,  129060195264000.,   10559470521600.,
                      670442572800.,      33522128640.,       1323241920.,
                      40840800.,          960960.,            16380.,
                      182.,               1.};
  const Matrix i = Matrix::Identity(a.rows(), a.cols());
  const Matrix a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
  v = b[13] * a6 + b[11] * a4 + b[9] * a2;  // used as scratch
  Matrix tmp = a6 * v;
  tmp += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * i;
  u = a * tmp;
  tmp = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * tmp;
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * i;
}

}  // namespace

Matrix expm(const Matrix& m) {
  require(m.rows() == m.cols(), "expm: square input required");
  check_overflow(m);

  // 1-norm thresholds from Higham (2005).
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
  Matrix u, v;
  int squarings = 0;
  if (norm < 1.495585217958292e-2) {
    pade3(m, u, v);
  } else if (norm < 2.539398330063230e-1) {
    pade5(m, u, v);
  } else if (norm < 9.504178996162932e-1) {
    pade7(m, u, v);
  } else if (norm < 2.097847961257068) {
    pade9(m, u, v);
  } else {
    const double theta13 = 5.371920351148152;
    squarings = std::max(0, int(std::ceil(std::log2(norm / theta13))));
    const Matrix scaled = m * std::pow(2.0, -squarings);
    pade13(scaled, u, v);
  }

  Matrix num = v + u;
  Matrix den = v - u;
  Matrix r = den.partialPivLu().solve(num);
  for (int s = 0; s < squarings; ++s) {
    r = r * r;
    check_overflow(r);
  }
  check_overflow(r);
  return r;
}

}  // namespace tcljc
