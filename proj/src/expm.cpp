#include "logdecay/expm.hpp"

#include <cmath>

#include "logdecay/linear_solve.hpp"

namespace logdecay {

namespace {

// Pade numerator coefficients and 1-norm thresholds from Higham, "The scaling
// and squaring method for the matrix exponential revisited" (SIAM 2005).
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

// Given U (odd part, pre-multiplied by M) and V (even part), the order-(2m+1)
// approximant is (V - U)^{-1} (V + U).
ComplexMatrix pade_combine(const ComplexMatrix& u, const ComplexMatrix& v) {
    const ComplexMatrix numer = v + u;
    const ComplexMatrix denom = v - u;
    return LuFactorization(denom).solve(numer);
}

ComplexMatrix pade3(const ComplexMatrix& m, const ComplexMatrix& m2) {
    static const double b[] = {120.0, 60.0, 12.0, 1.0};
    const int n = m.dim();
    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix u = m * (b[3] * m2 + b[1] * ident);
    const ComplexMatrix v = b[2] * m2 + b[0] * ident;
    return pade_combine(u, v);
}

ComplexMatrix pade5(const ComplexMatrix& m, const ComplexMatrix& m2, const ComplexMatrix& m4) {
    static const double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    const int n = m.dim();
    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix u = m * (b[5] * m4 + b[3] * m2 + b[1] * ident);
    const ComplexMatrix v = b[4] * m4 + b[2] * m2 + b[0] * ident;
    return pade_combine(u, v);
}

ComplexMatrix pade7(const ComplexMatrix& m, const ComplexMatrix& m2, const ComplexMatrix& m4,
                    const ComplexMatrix& m6) {
    static const double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                               25200.0,    1512.0,    56.0,      1.0};
    const int n = m.dim();
    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix u = m * (b[7] * m6 + b[5] * m4 + b[3] * m2 + b[1] * ident);
    const ComplexMatrix v = b[6] * m6 + b[4] * m4 + b[2] * m2 + b[0] * ident;
    return pade_combine(u, v);
}

ComplexMatrix pade9(const ComplexMatrix& m, const ComplexMatrix& m2, const ComplexMatrix& m4,
                    const ComplexMatrix& m6, const ComplexMatrix& m8) {
    static const double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                               30270240.0,    2162160.0,    110880.0,     3960.0,
                               90.0,          1.0};
    const int n = m.dim();
    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix u = m * (b[9] * m8 + b[7] * m6 + b[5] * m4 + b[3] * m2 + b[1] * ident);
    const ComplexMatrix v = b[8] * m8 + b[6] * m6 + b[4] * m4 + b[2] * m2 + b[0] * ident;
    return pade_combine(u, v);
}

ComplexMatrix pade13(const ComplexMatrix& m, const ComplexMatrix& m2, const ComplexMatrix& m4,
                     const ComplexMatrix& m6) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const int n = m.dim();
    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix u =
        m * (m6 * (b[13] * m6 + b[11] * m4 + b[9] * m2) + b[7] * m6 + b[5] * m4 + b[3] * m2 +
             b[1] * ident);
    const ComplexMatrix v = m6 * (b[12] * m6 + b[10] * m4 + b[8] * m2) + b[6] * m6 + b[4] * m4 +
                            b[2] * m2 + b[0] * ident;
    return pade_combine(u, v);
}

}  // namespace

ComplexMatrix matexp(const ComplexMatrix& m_in) {
    validate_finite(m_in, "matexp input");
    const int n = m_in.dim();
    const double l1 = norm_one(m_in);

    ComplexMatrix result(n);
    if (l1 <= kTheta9) {
        const ComplexMatrix m2 = m_in * m_in;
        if (l1 <= kTheta3) {
            result = pade3(m_in, m2);
        } else if (l1 <= kTheta5) {
            const ComplexMatrix m4 = m2 * m2;
            result = pade5(m_in, m2, m4);
        } else {
            const ComplexMatrix m4 = m2 * m2;
            const ComplexMatrix m6 = m4 * m2;
            if (l1 <= kTheta7) {
                result = pade7(m_in, m2, m4, m6);
            } else {
                const ComplexMatrix m8 = m6 * m2;
                result = pade9(m_in, m2, m4, m6, m8);
            }
        }
    } else {
        // Scale down by 2^squarings so the 1-norm fits the order-13 window.
        int squarings = 0;
        std::frexp(l1 / kTheta13, &squarings);
        if (squarings < 0) squarings = 0;
        if (squarings > 1020)
            throw std::runtime_error("matexp: input norm too large (" + std::to_string(l1) +
                                     "); exponential would overflow");
        ComplexMatrix scaled(m_in);
        scaled *= std::ldexp(1.0, -squarings);
        const ComplexMatrix m2 = scaled * scaled;
        const ComplexMatrix m4 = m2 * m2;
        const ComplexMatrix m6 = m4 * m2;
        result = pade13(scaled, m2, m4, m6);
        for (int k = 0; k < squarings; ++k) result = result * result;
    }

    if (!all_finite(result))
        throw std::runtime_error("matexp: overflow (non-finite entries in the result)");
    return result;
}

}  // namespace logdecay
