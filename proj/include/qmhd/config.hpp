#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmhd/field.hpp"

namespace qmhd {

// Orientation of the applied magnetic field. The inductionless Lorentz force
// damps the velocity component perpendicular to the field:
//   Axial (cylinder, field along z)  -> damps u_r
//   A     (square cavity, vertical)  -> damps u_x
//   B     (square cavity, horizontal)-> damps u_y
enum class FieldVariant { None, Axial, A, B };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimensionless run parameters.
struct PhysParams {
    double Gr = 0.0;           // Grashof
    double Ha = 0.0;           // Hartmann
    double Pr = 0.018;         // Prandtl
    double Ma = 1000.0;        // Marangoni
    double Re_s = 1e7;         // acoustic Reynolds
    double tau0 = 2e-5;        // empirical regularizer added to 1/Re_s^2
    double dt = 1e-7;
    double eps_steady = 1e-3;
    double poisson_tol = 1e-8;
    long poisson_max_iter = 0; // 0 -> 10*n1*n2
    double sor_omega = 1.7;

    void validate() const;
};

// tau = 1/Re_s^2 + tau0 (the 1/Re_s^2 part is negligible at Re_s ~ 1e7 but
// is kept for generality).
inline double effective_tau(const PhysParams& p) {
    return 1.0 / (p.Re_s * p.Re_s) + p.tau0;
}

struct CaseConfig {
    Geometry geometry = Geometry::Planar;
    int n1 = 42, n2 = 42;
    PhysParams phys;
    FieldVariant variant = FieldVariant::None;
    std::string preset_name;
    std::string output_dir;
    long max_steps = 5000000;
    long snapshot_every = 10000;
    unsigned seed = 0;         // reserved; physics is deterministic
    bool overwrite = false;
    int threads = 0;           // 0 -> library default

    // reference metadata carried by presets (not used by the solver)
    std::optional<double> expected_psi_min;
    std::optional<long> expected_steps;

    Grid make_grid() const { return Grid::make(geometry, n1, n2); }
    void validate() const;
};

struct Preset {
    std::string name;
    CaseConfig config;
    double expected_psi_min;
    long expected_steps;
};

// One preset per benchmark table row (4 cylindrical + 7 square-cavity).
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);
CaseConfig expand_preset(const std::string& name);

// Flat `key = value` grammar, '#' comments, unknown keys rejected.
// A `preset` key seeds defaults; explicit keys override them.
CaseConfig parse_config(const std::string& text);
CaseConfig parse_config_file(const std::string& path);
std::string serialize_config(const CaseConfig& cfg);

std::string to_string(Geometry g);
std::string to_string(FieldVariant v);

} // namespace qmhd
