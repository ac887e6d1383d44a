#pragma once

#include "thetalab/matrix.hpp"

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace thetalab {

// 2x2 integer matrix (a b; c d).
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;

    long det() const { return a * d - b * c; }
    long trace() const { return a + d; }
    Mat2 mod(long m) const;
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
    friend auto operator<=>(const Mat2&, const Mat2&) = default;
    std::string str() const;
};

Mat2 mul_mod(const Mat2& x, const Mat2& y, long m);
Mat2 inverse_mod(const Mat2& x, long m);  // det must be 1 mod m

inline constexpr Mat2 kGenA{0, -1, 1, 0};
inline constexpr Mat2 kGenB{1, 1, 0, 1};

// Word in the generators A = (0,-1;1,0), B = (1,1;0,1).
class SL2Word {
public:
    struct Letter {
        char gen;  // 'A' or 'B'
        long power;
    };

    SL2Word() = default;
    explicit SL2Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    SL2Word& then(char gen, long power);

    const std::vector<Letter>& letters() const { return letters_; }
    Mat2 evaluate() const;
    std::string str() const;

    // Same word with A, B replaced by the given matrices.
    template <class S>
    Matrix<S> evaluate_rep(const Matrix<S>& A, const Matrix<S>& B) const {
        Matrix<S> r = Matrix<S>::identity(A.rows());
        for (const auto& l : letters_) r = r * (l.gen == 'A' ? A : B).pow(l.power);
        return r;
    }

    // B^N (A^-1 B^-1 A) B^N (A^{N-1} B A), as printed with the kernel claim.
    static SL2Word kernel_word_printed(int N);
    // (1,N;0,1)(1,0;N-1,1)(1,N;0,1)(1,0;1,1) with (1,0;c,1) = A^-1 B^-c A;
    // congruent to (1+N)I mod 2N.
    static SL2Word kernel_word(int N);

private:
    std::vector<Letter> letters_;
};

}  // namespace thetalab
