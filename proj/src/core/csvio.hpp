#pragma once

#include <string>
#include <vector>

#include "dynamics.hpp"
#include "kepler.hpp"
#include "scc.hpp"

namespace cnb {

// All numbers are printed with 17 significant digits so that re-reading a file
// reproduces the doubles bit for bit.
std::string format_double(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path);

// header: t,body,x,y,z,w,vx,vy,vz,vw
void write_trajectory_csv(const std::string& path, const Trajectory& tr);
Trajectory read_trajectory_csv(const std::string& path, Sign sign,
                               const std::vector<double>& masses);

// header: t,Lxy,Lxz,Lxw,Lyz,Lyw,Lzw,max_constraint_residual,min_sn_dij
void write_diagnostics_csv(const std::string& path, const Trajectory& tr);

// header: t,alpha,theta,phi,p_alpha,p_theta,p_phi,A,L
void write_kepler_csv(const std::string& path, const KeplerTrajectory& tr);

// header: family,c1,c2,m,f_residual,scc_residual
void write_root_curve_csv(const std::string& path, const std::string& family,
                          const std::vector<RootPoint>& curve);

} // namespace cnb
