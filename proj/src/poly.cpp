#include "mlat/poly.hpp"

#include <cstdio>

namespace mlat {

namespace {

void check_in_field(const FieldSpec& field, const Scalar& s)
{
    if (s.is_rational())
        return;
    if (field.kind != FieldSpec::Kind::Quadratic || field.d != s.radicand())
        throw Error(Errc::FieldMismatch, "coefficient " + s.to_string() + " does not lie in " + to_string(field));
}

} // namespace

Arrangement::Arrangement(FieldSpec field, std::vector<LinearForm> forms, std::vector<std::string> names)
    : field_(field), forms_(std::move(forms)), names_(std::move(names))
{
    if (field_.kind == FieldSpec::Kind::Prime)
        throw Error(Errc::InvalidField, "arrangements are defined in characteristic 0; use the modular solver for F_p");
    if (field_.kind == FieldSpec::Kind::Quadratic)
        field_ = FieldSpec::quadratic(field_.d);
    if (forms_.empty())
        throw Error(Errc::InvalidForm, "an arrangement needs at least one line");
    if (!names_.empty() && names_.size() != forms_.size())
        throw Error(Errc::LengthMismatch, "names do not match forms");
    for (std::size_t i = 0; i < forms_.size(); ++i) {
        check_in_field(field_, forms_[i].a());
        check_in_field(field_, forms_[i].b());
        for (std::size_t j = 0; j < i; ++j) {
            if (forms_[i] == forms_[j])
                throw Error(Errc::ProportionalForms, "forms " + std::to_string(j) + " (" + forms_[j].to_string() +
                                                         ") and " + std::to_string(i) + " are proportional");
        }
    }
}

std::string Arrangement::label(std::size_t i) const
{
    if (!names_.empty() && !names_[i].empty())
        return names_[i];
    return forms_[i].to_string();
}

std::string Arrangement::canonical_text() const
{
    std::string s = to_string(field_);
    for (const auto& f : forms_) {
        s += ";";
        s += f.a().rational_part().get_str() + "," + f.a().irrational_part().get_str() + ",";
        s += f.b().rational_part().get_str() + "," + f.b().irrational_part().get_str();
    }
    return s;
}

std::string Arrangement::hash() const
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical_text()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

HomogPoly defining_polynomial(const Arrangement& arr, std::span<const int> mu)
{
    if (mu.size() != arr.size())
        throw Error(Errc::LengthMismatch, "multiplicity has " + std::to_string(mu.size()) + " entries, arrangement " +
                                              std::to_string(arr.size()) + " lines");
    HomogPoly r = HomogPoly::one();
    for (std::size_t i = 0; i < arr.size(); ++i)
        r = r * power(arr[i].as_poly(), mu[i]);
    return r;
}

} // namespace mlat
