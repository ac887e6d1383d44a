#include "thetalab/sl2.hpp"

#include <sstream>
#include <stdexcept>

namespace thetalab {

namespace {
long md(long x, long m) { return ((x % m) + m) % m; }
}

Mat2 Mat2::mod(long m) const { return {md(a, m), md(b, m), md(c, m), md(d, m)}; }

std::string Mat2::str() const {
    std::ostringstream os;
    os << "(" << a << "," << b << ";" << c << "," << d << ")";
    return os.str();
}

Mat2 mul_mod(const Mat2& x, const Mat2& y, long m) { return (x * y).mod(m); }

Mat2 inverse_mod(const Mat2& x, long m) {
    if (md(x.det(), m) != md(1, m)) throw std::invalid_argument("inverse_mod: determinant is not 1");
    return Mat2{x.d, -x.b, -x.c, x.a}.mod(m);
}

SL2Word& SL2Word::then(char gen, long power) {
    if (gen != 'A' && gen != 'B') throw std::invalid_argument("SL2Word: generator must be A or B");
    letters_.push_back({gen, power});
    return *this;
}

Mat2 SL2Word::evaluate() const {
    Mat2 r;
    for (const auto& l : letters_) {
        const Mat2& g = l.gen == 'A' ? kGenA : kGenB;
        Mat2 gi = l.gen == 'A' ? Mat2{0, 1, -1, 0} : Mat2{1, -1, 0, 1};
        long p = l.power;
        const Mat2& step = p >= 0 ? g : gi;
        for (long i = 0; i < (p >= 0 ? p : -p); ++i) r = r * step;
    }
    return r;
}

std::string SL2Word::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << " ";
        os << letters_[i].gen;
        if (letters_[i].power != 1) os << "^" << letters_[i].power;
    }
    return os.str();
}

SL2Word SL2Word::kernel_word_printed(int N) {
    SL2Word w;
    w.then('B', N).then('A', -1).then('B', -1).then('A', 1).then('B', N).then('A', N - 1).then('B', 1).then('A', 1);
    return w;
}

SL2Word SL2Word::kernel_word(int N) {
    SL2Word w;
    w.then('B', N).then('A', -1).then('B', -(N - 1)).then('A', 1).then('B', N).then('A', -1).then('B', -1).then('A', 1);
    return w;
}

}  // namespace thetalab
