#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nkl/discretization.hpp"
#include "nkl/models.hpp"

namespace nkl {

struct RunConfig {
    DensityModel model = DensityModel::cauchy(2.0, 1);
    double L = 40.0;
    int n = 2001;
    Boundary bc = Boundary::Neumann;
    std::vector<double> alpha_list = {0.5};
    std::vector<double> t_list;  // default: 5 log-spaced points in [1e-3, 1e-2]
    double epsilon = 0.5;
    double interior_margin = 0.25;
    std::string output_dir = "nkl_out";
    std::uint64_t seed = 20260815;

    bool grid_overridden = false;  // set when L or n came from file or flag

    static RunConfig defaults();

    // Exponential-family models concentrate mass near the origin; unless the
    // grid was set explicitly they get a tighter, finer default box.
    void apply_family_grid_defaults();

    Grid1D make_grid() const;
    void validate() const;
    std::string canonical_json() const;
    std::string digest() const;
};

RunConfig load_config_file(const std::string& path);

uint64_t fnv1a(const std::string& data);

}  // namespace nkl
