#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqsteer/linalg.hpp"

namespace seqsteer {

// A named list of measurement directions together with its cached
// local-hidden-state bound. Directions must be pairwise distinct and
// non-antipodal.
class SettingFamily {
public:
    SettingFamily(std::string name, std::vector<BlochVector> directions);

    const std::string& name() const { return name_; }
    std::span<const BlochVector> directions() const { return directions_; }
    const BlochVector& direction(std::size_t m) const { return directions_.at(m); }
    std::size_t size() const { return directions_.size(); }
    double bound() const { return bound_; }

private:
    std::string name_;
    std::vector<BlochVector> directions_;
    double bound_;
};

// The three canonical families: the orthogonal axes (n = 3), one direction
// per antipodal vertex pair of the regular icosahedron (n = 6) and of the
// regular dodecahedron (n = 10).
SettingFamily family_xyz();
SettingFamily family_icosahedron();
SettingFamily family_dodecahedron();

// Lookup by CLI name: "xyz", "ico6", "dod10".
SettingFamily family_by_name(std::string_view name);
std::vector<std::string> family_names();

// Every direction negated; the bound is unchanged because the sign flip is
// absorbed into the declared-result maximization.
SettingFamily antipode(const SettingFamily& family);

// CHSH direction pairs reaching 2 sqrt(2) on the singlet with
// I = |c00 + c01 + c10 - c11|: alice = {Z, X},
// bob = {-(X+Z)/sqrt2, (X-Z)/sqrt2}.
struct ChshSettings {
    std::array<BlochVector, 2> alice;
    std::array<BlochVector, 2> bob;
};

ChshSettings chsh_settings();

// Columns: name, index, x, y, z.
void write_family_csv(std::ostream& out, const SettingFamily& family);

}  // namespace seqsteer
