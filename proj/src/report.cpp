#include "wavetail/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wavetail/errors.hpp"

namespace wavetail {

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) fail(ErrKind::IoError, "cannot open " + tmp);
        f << content;
        if (!f.good()) fail(ErrKind::IoError, "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail(ErrKind::IoError, "rename failed for " + path);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string region_stats_csv(const std::vector<RegionStat>& stats) {
    std::ostringstream os;
    os << "region_kind,T,RorU,field,sup,l2\n";
    for (const auto& s : stats) {
        os << region_kind_name(s.region.kind) << "," << format_double(s.region.T) << ","
           << format_double(s.region.ru) << "," << s.field << "," << format_double(s.sup) << ","
           << format_double(s.l2) << "\n";
    }
    return os.str();
}

std::string probes_csv(const FieldHistory& h) {
    std::ostringstream os;
    os << "t,band_abs_max,mid_phi\n";
    for (std::size_t i = 0; i < h.probe_times.size(); ++i)
        os << format_double(h.probe_times[i]) << "," << format_double(h.probe_band_abs_max[i])
           << "," << format_double(h.probe_mid_phi[i]) << "\n";
    return os.str();
}

std::string energy_csv(const FieldHistory& h) {
    std::ostringstream os;
    os << "t,energy\n";
    for (std::size_t i = 0; i < h.energy_times.size(); ++i)
        os << format_double(h.energy_times[i]) << "," << format_double(h.energy[i]) << "\n";
    return os.str();
}

std::string tslices_csv(const FieldHistory& h, std::size_t r_stride) {
    std::ostringstream os;
    os << "t,r,phi\n";
    for (double T = 1.0; T <= h.grid.t_max + 1e-9; T *= 2.0) {
        std::size_t s = h.slice_index(T);
        if (std::fabs(h.slice_times[s] - T) > h.grid.slice_dt) continue;
        for (std::size_t j = 0; j < h.n_r(); j += r_stride)
            os << format_double(h.slice_times[s]) << "," << format_double(h.r[j]) << ","
               << format_double(h.phi_at(s, j)) << "\n";
    }
    return os.str();
}

std::string ucurves_csv(const FieldHistory& h, const std::vector<double>& u_values) {
    std::ostringstream os;
    os << "u,t,r,phi\n";
    for (double u0 : u_values) {
        for (std::size_t s = 0; s < h.n_slices(); ++s) {
            double t = h.slice_times[s];
            double r = t - u0;
            if (r < h.grid.dr || r > h.r.back()) continue;
            std::size_t j = static_cast<std::size_t>(std::llround(r / h.grid.dr));
            if (j >= h.n_r()) continue;
            os << format_double(u0) << "," << format_double(t) << "," << format_double(h.r[j])
               << "," << format_double(h.phi_at(s, j)) << "\n";
        }
    }
    return os.str();
}

std::string verdicts_text(const std::vector<RateVerdict>& verdicts) {
    std::ostringstream os;
    for (const auto& v : verdicts) {
        os << (v.pass ? "[PASS] " : "[FAIL] ") << v.name << ": expected " << format_double(v.expected)
           << " measured " << format_double(v.measured) << " tol " << format_double(v.tolerance)
           << "\n";
    }
    return os.str();
}

std::string verdicts_csv(const std::vector<RateVerdict>& verdicts) {
    std::ostringstream os;
    os << "check,expected,measured,tolerance,status\n";
    for (const auto& v : verdicts)
        os << v.name << "," << format_double(v.expected) << "," << format_double(v.measured) << ","
           << format_double(v.tolerance) << "," << (v.pass ? "pass" : "fail") << "\n";
    return os.str();
}

namespace {

void put_block(std::ostringstream& os, const std::vector<double>& v) {
    os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
}

std::vector<double> get_block(std::istream& is, std::size_t n) {
    std::vector<double> v(n);
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * 8));
    if (!is.good()) fail(ErrKind::IoError, "truncated checkpoint payload");
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const FieldHistory& h) {
    std::ostringstream os(std::ios::binary);
    os << "wavetail-checkpoint 1\n";
    os << "scenario_hash " << h.scenario_hash << "\n";
    os << "dr " << format_double(h.grid.dr) << "\n";
    os << "dt " << format_double(h.dt) << "\n";
    os << "n_r " << h.n_r() << "\n";
    os << "n_slices " << h.n_slices() << "\n";
    os << "payload\n";
    put_block(os, h.slice_times);
    for (const auto& s : h.psi) put_block(os, s);
    for (const auto& s : h.dtpsi) put_block(os, s);
    write_file_atomic(path, os.str());
}

FieldHistory load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrKind::IoError, "cannot open checkpoint " + path);
    FieldHistory h;
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "wavetail-checkpoint" || version != 1)
        fail(ErrKind::IoError, "not a checkpoint file: " + path);
    std::string key;
    std::size_t n_r = 0, n_slices = 0;
    while (is >> key) {
        if (key == "payload") break;
        if (key == "scenario_hash") is >> h.scenario_hash;
        else if (key == "dr") is >> h.grid.dr;
        else if (key == "dt") is >> h.dt;
        else if (key == "n_r") is >> n_r;
        else if (key == "n_slices") is >> n_slices;
        else fail(ErrKind::IoError, "unknown checkpoint key " + key);
    }
    is.get();  // newline after "payload"
    h.slice_times = get_block(is, n_slices);
    h.r.resize(n_r);
    for (std::size_t j = 0; j < n_r; ++j) h.r[j] = static_cast<double>(j) * h.grid.dr;
    for (std::size_t s = 0; s < n_slices; ++s) h.psi.push_back(get_block(is, n_r));
    for (std::size_t s = 0; s < n_slices; ++s) h.dtpsi.push_back(get_block(is, n_r));
    if (n_slices > 1) h.grid.slice_dt = h.slice_times[1] - h.slice_times[0];
    h.grid.r_max = h.r.empty() ? 0.0 : h.r.back();
    h.grid.t_max = h.slice_times.empty() ? 0.0 : h.slice_times.back();
    return h;
}

}  // namespace wavetail
