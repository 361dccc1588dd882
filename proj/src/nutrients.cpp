#include "foodsim/nutrients.hpp"

#include "foodsim/errors.hpp"

namespace foodsim {

namespace {

double *component_ptr(NutrientVector &v, std::size_t i) {
    switch (i) {
    case 0: return &v.energy_kj;
    case 1: return &v.satfat_g;
    case 2: return &v.sugar_g;
    case 3: return &v.salt_g;
    case 4: return &v.pufa_g;
    case 5: return &v.fruit_g;
    case 6: return &v.veg_g;
    case 7: return &v.ssb_ml;
    default: throw UnknownNutrientError("nutrient component index out of range");
    }
}

} // namespace

double &NutrientVector::operator[](std::size_t i) { return *component_ptr(*this, i); }

double NutrientVector::operator[](std::size_t i) const {
    return *component_ptr(const_cast<NutrientVector &>(*this), i);
}

NutrientVector &NutrientVector::operator+=(const NutrientVector &other) {
    for (std::size_t i = 0; i < component_count; ++i)
        (*this)[i] += other[i];
    return *this;
}

NutrientVector NutrientVector::scaled(double factor) const {
    NutrientVector out = *this;
    for (std::size_t i = 0; i < component_count; ++i)
        out[i] *= factor;
    return out;
}

bool NutrientVector::all_nonnegative() const {
    for (std::size_t i = 0; i < component_count; ++i)
        if ((*this)[i] < 0.0)
            return false;
    return true;
}

NutrientVector operator+(NutrientVector a, const NutrientVector &b) {
    a += b;
    return a;
}

NutrientVector operator-(const NutrientVector &a, const NutrientVector &b) {
    NutrientVector out = a;
    for (std::size_t i = 0; i < NutrientVector::component_count; ++i)
        out[i] -= b[i];
    return out;
}

const std::array<std::string, NutrientVector::component_count> &nutrient_keys() {
    static const std::array<std::string, NutrientVector::component_count> keys = {
        "energy", "satfat", "sugar", "salt", "pufa", "fruit", "veg", "ssb"};
    return keys;
}

std::size_t nutrient_index(const std::string &key) {
    const auto &keys = nutrient_keys();
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == key)
            return i;
    throw UnknownNutrientError("unknown nutrient key: " + key);
}

} // namespace foodsim
