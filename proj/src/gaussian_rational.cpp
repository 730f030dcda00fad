#include "thetapath/gaussian_rational.hpp"

#include <cmath>

#include "thetapath/errors.hpp"

namespace thetapath {

namespace {

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw UsageError("empty rational literal");
    mpq_class q;
    const std::string body = (text[0] == '+') ? text.substr(1) : text;
    if (q.set_str(body, 10) != 0) throw UsageError("malformed rational literal '" + text + "'");
    if (q.get_den() == 0) throw DomainError("zero denominator in literal '" + text + "'");
    q.canonicalize();
    return q;
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::from_double(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) throw DomainError("non-finite value cannot be made exact");
    return {mpq_class(re), mpq_class(im)};
}

GaussianRational GaussianRational::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "*i") == 0) {
        const std::string head = s.substr(0, s.size() - 2);
        // the imaginary part starts at the last sign that is not a leading sign
        std::size_t split = std::string::npos;
        for (std::size_t k = head.size(); k-- > 1;) {
            if (head[k] == '+' || head[k] == '-') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) return {mpq_class(0), parse_rational(head)};
        return {parse_rational(head.substr(0, split)), parse_rational(head.substr(split))};
    }
    return {parse_rational(s), mpq_class(0)};
}

std::string GaussianRational::to_string() const {
    std::string out = re_.get_str();
    out += (sgn(im_) < 0) ? "-" : "+";
    out += mpq_class(abs(im_)).get_str();
    out += "*i";
    return out;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    if (o.is_real()) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    const mpq_class d = o.norm();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

}  // namespace thetapath
