#include "csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cnb {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot open for writing: " + path);
    return f;
}

} // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open for reading: " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(f, line)) throw InvalidInput("empty CSV: " + path);
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != t.header.size())
            throw InvalidInput("ragged CSV row in " + path);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    std::ofstream f = open_out(path);
    f << "t,body,x,y,z,w,vx,vy,vz,vw\n";
    for (const TrajectorySample& s : tr.samples)
        for (std::size_t i = 0; i < s.pos.size(); ++i) {
            f << format_double(s.t) << ',' << i;
            for (int d = 0; d < 4; ++d) f << ',' << format_double(s.pos[i][d]);
            for (int d = 0; d < 4; ++d) f << ',' << format_double(s.vel[i][d]);
            f << '\n';
        }
}

Trajectory read_trajectory_csv(const std::string& path, Sign sign,
                               const std::vector<double>& masses) {
    CsvTable t = read_csv(path);
    if (t.header.size() != 10) throw InvalidInput("unexpected trajectory CSV header in " + path);
    Trajectory tr;
    tr.sign = sign;
    tr.mass = masses;
    const std::size_t n = masses.size();
    if (t.rows.size() % n != 0) throw InvalidInput("trajectory CSV row count mismatch");
    for (std::size_t k = 0; k < t.rows.size(); k += n) {
        TrajectorySample s;
        s.t = t.rows[k][0];
        for (std::size_t i = 0; i < n; ++i) {
            const auto& r = t.rows[k + i];
            s.pos.push_back({r[2], r[3], r[4], r[5]});
            s.vel.push_back({r[6], r[7], r[8], r[9]});
        }
        tr.samples.push_back(std::move(s));
    }
    return tr;
}

void write_diagnostics_csv(const std::string& path, const Trajectory& tr) {
    std::ofstream f = open_out(path);
    f << "t,Lxy,Lxz,Lxw,Lyz,Lyw,Lzw,max_constraint_residual,min_sn_dij\n";
    for (std::size_t k = 0; k < tr.samples.size(); ++k) {
        const SampleDiagnostics& d = tr.diagnostics.at(k);
        f << format_double(tr.samples[k].t);
        for (double L : d.momenta) f << ',' << format_double(L);
        f << ',' << format_double(d.max_constraint_residual) << ','
          << format_double(d.min_sn_dij) << '\n';
    }
}

void write_kepler_csv(const std::string& path, const KeplerTrajectory& tr) {
    std::ofstream f = open_out(path);
    f << "t,alpha,theta,phi,p_alpha,p_theta,p_phi,A,L\n";
    for (const KeplerSample& s : tr.samples) {
        KeplerConserved c = kepler_conserved(s.state);
        f << format_double(s.t) << ',' << format_double(s.state.alpha) << ','
          << format_double(s.state.theta) << ',' << format_double(s.state.phi) << ','
          << format_double(s.state.p_alpha) << ',' << format_double(s.state.p_theta) << ','
          << format_double(s.state.p_phi) << ',' << format_double(c.A) << ','
          << format_double(c.L) << '\n';
    }
}

void write_root_curve_csv(const std::string& path, const std::string& family,
                          const std::vector<RootPoint>& curve) {
    std::ofstream f = open_out(path);
    f << "family,c1,c2,m,f_residual,scc_residual\n";
    for (const RootPoint& p : curve)
        f << family << ',' << format_double(p.c1) << ',' << format_double(p.c2) << ','
          << format_double(p.m) << ',' << format_double(p.f_residual) << ','
          << format_double(p.scc) << '\n';
}

} // namespace cnb
