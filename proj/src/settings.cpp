#include "seqsteer/settings.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "seqsteer/csv.hpp"
#include "seqsteer/nonlocality.hpp"

namespace seqsteer {

namespace {

constexpr double kGoldenRatio = 1.6180339887498948482;

double pair_distance(const BlochVector& a, const BlochVector& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

SettingFamily::SettingFamily(std::string name, std::vector<BlochVector> directions)
    : name_(std::move(name)), directions_(std::move(directions)), bound_(0.0) {
    if (directions_.empty()) throw std::invalid_argument("SettingFamily: no directions");
    for (std::size_t i = 0; i < directions_.size(); ++i) {
        for (std::size_t j = i + 1; j < directions_.size(); ++j) {
            const double d_eq = pair_distance(directions_[i], directions_[j]);
            const double d_anti = pair_distance(directions_[i], directions_[j].antipode());
            if (d_eq <= 1e-9 || d_anti <= 1e-9) {
                throw std::invalid_argument("SettingFamily '" + name_ +
                                            "': directions must be pairwise distinct and non-antipodal");
            }
        }
    }
    bound_ = classical_bound(directions_);
}

SettingFamily family_xyz() {
    return SettingFamily("xyz", {BlochVector(1, 0, 0), BlochVector(0, 1, 0), BlochVector(0, 0, 1)});
}

SettingFamily family_icosahedron() {
    const double p = kGoldenRatio;
    return SettingFamily("ico6", {
                                     BlochVector::normalized(1, p, 0),
                                     BlochVector::normalized(-1, p, 0),
                                     BlochVector::normalized(0, 1, p),
                                     BlochVector::normalized(0, -1, p),
                                     BlochVector::normalized(p, 0, 1),
                                     BlochVector::normalized(p, 0, -1),
                                 });
}

SettingFamily family_dodecahedron() {
    const double p = kGoldenRatio;
    const double q = 1.0 / kGoldenRatio;
    return SettingFamily("dod10", {
                                      BlochVector::normalized(1, 1, 1),
                                      BlochVector::normalized(1, 1, -1),
                                      BlochVector::normalized(1, -1, 1),
                                      BlochVector::normalized(1, -1, -1),
                                      BlochVector::normalized(0, q, p),
                                      BlochVector::normalized(0, -q, p),
                                      BlochVector::normalized(q, p, 0),
                                      BlochVector::normalized(-q, p, 0),
                                      BlochVector::normalized(p, 0, q),
                                      BlochVector::normalized(p, 0, -q),
                                  });
}

SettingFamily family_by_name(std::string_view name) {
    if (name == "xyz") return family_xyz();
    if (name == "ico6") return family_icosahedron();
    if (name == "dod10") return family_dodecahedron();
    throw std::invalid_argument("unknown setting family '" + std::string(name) +
                                "' (known: xyz, ico6, dod10)");
}

std::vector<std::string> family_names() { return {"xyz", "ico6", "dod10"}; }

SettingFamily antipode(const SettingFamily& family) {
    std::vector<BlochVector> flipped;
    flipped.reserve(family.size());
    for (const BlochVector& u : family.directions()) flipped.push_back(u.antipode());
    std::string name = family.name();
    constexpr std::string_view prefix = "anti:";
    if (name.rfind(prefix, 0) == 0) {
        name = name.substr(prefix.size());
    } else {
        name = std::string(prefix) + name;
    }
    return SettingFamily(std::move(name), std::move(flipped));
}

ChshSettings chsh_settings() {
    return ChshSettings{
        {BlochVector(0, 0, 1), BlochVector(1, 0, 0)},
        {BlochVector::normalized(-1, 0, -1), BlochVector::normalized(1, 0, -1)},
    };
}

void write_family_csv(std::ostream& out, const SettingFamily& family) {
    out << "name,index,x,y,z\n";
    for (std::size_t m = 0; m < family.size(); ++m) {
        const BlochVector& u = family.direction(m);
        out << family.name() << ',' << m << ',' << csv::format(u.x) << ',' << csv::format(u.y)
            << ',' << csv::format(u.z) << '\n';
    }
}

}  // namespace seqsteer
