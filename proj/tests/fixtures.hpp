#pragma once

#include "mlat/coxeter.hpp"

#include <string>

namespace fx {

inline mlat::Arrangement b2() { return mlat::coxeter_arrangement(mlat::CoxeterSpec::standard(mlat::CoxeterType::B2)); }
inline mlat::Arrangement g2() { return mlat::coxeter_arrangement(mlat::CoxeterSpec::standard(mlat::CoxeterType::G2)); }
inline mlat::Arrangement a2() { return mlat::coxeter_arrangement(mlat::CoxeterSpec::standard(mlat::CoxeterType::A2)); }
inline mlat::Arrangement boolean()
{
    return mlat::coxeter_arrangement(mlat::CoxeterSpec::standard(mlat::CoxeterType::A1A1));
}

inline mlat::HomogPoly x() { return mlat::HomogPoly::monomial(1, 1); }
inline mlat::HomogPoly y() { return mlat::HomogPoly::monomial(1, 0); }

inline std::string data(const std::string& name) { return std::string(ML_DATA_DIR) + "/" + name; }

} // namespace fx
