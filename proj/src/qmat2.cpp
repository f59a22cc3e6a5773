#include <mobius/qmat2.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace mobius {

namespace {

QMat2 exp_series(const QMat2& m) {
    // Scaling and squaring: bring the norm below 0.5 before the series.
    int squarings = 0;
    double n = m.fnorm();
    while (n > 0.5) {
        n *= 0.5;
        ++squarings;
    }
    QMat2 a = m / std::ldexp(1.0, squarings);

    QMat2 sum = QMat2::identity();
    QMat2 term = QMat2::identity();
    for (int k = 1; k <= 20; ++k) {
        term = term * a / double(k);
        sum = sum + term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// 4x4 matrix of left multiplication by q on (w,x,y,z) coordinates.
void fill_left_mul(double out[4][4], const Quaternion& q) {
    out[0][0] = q.w; out[0][1] = -q.x; out[0][2] = -q.y; out[0][3] = -q.z;
    out[1][0] = q.x; out[1][1] =  q.w; out[1][2] = -q.z; out[1][3] =  q.y;
    out[2][0] = q.y; out[2][1] =  q.z; out[2][2] =  q.w; out[2][3] = -q.x;
    out[3][0] = q.z; out[3][1] = -q.y; out[3][2] =  q.x; out[3][3] =  q.w;
}

}  // namespace

QMat2 exp(const QMat2& m) {
    double norm = m.fnorm();
    if (norm == 0) return QMat2::identity();

    // Classify A^2 ~ sigma I.
    QMat2 sq = m * m;
    double sigma = 0.5 * real_trace(sq);
    QMat2 resid = sq - QMat2::identity() * sigma;
    double scale = norm * norm;
    if (resid.fnorm() <= 1e-9 * (scale + std::abs(sigma))) {
        if (sigma < -1e-30 * scale) {
            double t = std::sqrt(-sigma);
            return QMat2::identity() * std::cos(t) + m * (std::sin(t) / t);
        }
        if (sigma > 1e-30 * scale) {
            double t = std::sqrt(sigma);
            return QMat2::identity() * std::cosh(t) + m * (std::sinh(t) / t);
        }
        // Nilpotent: exp(A) = I + A (+ A^2/2, negligible but kept for exactness).
        return QMat2::identity() + m + sq * 0.5;
    }
    return exp_series(m);
}

QMat2 inverse(const QMat2& m) {
    // Fast path: A* A = +-I.
    QMat2 aa = adjoint_star(m) * m;
    double t = 0.5 * real_trace(aa);
    if (std::abs(std::abs(t) - 1.0) < 1e-12) {
        double sign = t > 0 ? 1.0 : -1.0;
        QMat2 cand = adjoint_star(m) * sign;
        if ((cand * m - QMat2::identity()).fnorm() < 1e-12 * (1 + m.fnorm())) return cand;
    }

    // General case: solve the 8x8 real system A X = I column by column.
    double M[8][8];
    double blk[4][4];
    const Quaternion* e[4] = {&m.a, &m.b, &m.c, &m.d};
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            fill_left_mul(blk, *e[2 * bi + bj]);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) M[4 * bi + i][4 * bj + j] = blk[i][j];
        }

    // Two right-hand sides: the quaternionic unit vectors (1,0) and (0,1).
    double rhs[8][2] = {};
    rhs[0][0] = 1.0;  // first column
    rhs[4][1] = 1.0;  // second column

    // Gaussian elimination with partial pivoting.
    std::array<int, 8> perm;
    for (int i = 0; i < 8; ++i) perm[i] = i;
    for (int col = 0; col < 8; ++col) {
        int piv = col;
        for (int r = col + 1; r < 8; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) < 1e-13 * (1 + m.fnorm())) {
            throw std::domain_error("singular quaternionic matrix");
        }
        if (piv != col) {
            for (int j = 0; j < 8; ++j) std::swap(M[col][j], M[piv][j]);
            std::swap(rhs[col][0], rhs[piv][0]);
            std::swap(rhs[col][1], rhs[piv][1]);
        }
        for (int r = col + 1; r < 8; ++r) {
            double f = M[r][col] / M[col][col];
            if (f == 0) continue;
            for (int j = col; j < 8; ++j) M[r][j] -= f * M[col][j];
            rhs[r][0] -= f * rhs[col][0];
            rhs[r][1] -= f * rhs[col][1];
        }
    }
    double x[8][2];
    for (int r = 7; r >= 0; --r) {
        for (int s = 0; s < 2; ++s) {
            double v = rhs[r][s];
            for (int j = r + 1; j < 8; ++j) v -= M[r][j] * x[j][s];
            x[r][s] = v / M[r][r];
        }
    }

    QMat2 out;
    out.a = {x[0][0], x[1][0], x[2][0], x[3][0]};
    out.c = {x[4][0], x[5][0], x[6][0], x[7][0]};
    out.b = {x[0][1], x[1][1], x[2][1], x[3][1]};
    out.d = {x[4][1], x[5][1], x[6][1], x[7][1]};
    return out;
}

}  // namespace mobius
