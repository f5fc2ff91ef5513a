#include "lupe/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lupe/operators.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace lupe {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& what) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " + what);
}

double to_double(const std::string& s, const std::string& origin, int line) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        parse_fail(origin, line, "expected a number, got '" + s + "'");
    }
    if (pos != s.size()) parse_fail(origin, line, "trailing characters in number '" + s + "'");
    return v;
}

long to_long(const std::string& s, const std::string& origin, int line) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        parse_fail(origin, line, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) parse_fail(origin, line, "trailing characters in integer '" + s + "'");
    return v;
}

bool to_bool(const std::string& s, const std::string& origin, int line) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    parse_fail(origin, line, "expected true/false, got '" + s + "'");
}

ModeSpec parse_mode(const std::string& s, const std::string& origin, int line) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    if (parts.size() != 7)
        parse_fail(origin, line,
                   "mode needs 7 comma-separated fields "
                   "(kind,kx,ky,m,amplitude,phase,component), got '" + s + "'");
    ModeSpec m;
    if (parts[0] == "bhn")
        m.kind = ModeSpec::Kind::bhn_streamfunction;
    else if (parts[0] == "potential")
        m.kind = ModeSpec::Kind::potential;
    else
        parse_fail(origin, line, "unknown mode kind '" + parts[0] + "'");
    m.kx = static_cast<int>(to_long(parts[1], origin, line));
    m.ky = static_cast<int>(to_long(parts[2], origin, line));
    m.m = static_cast<int>(to_long(parts[3], origin, line));
    m.amplitude = to_double(parts[4], origin, line);
    m.phase = to_double(parts[5], origin, line);
    if (parts[6].size() != 1 || (parts[6] != "x" && parts[6] != "y" && parts[6] != "z"))
        parse_fail(origin, line, "mode component must be x, y or z, got '" + parts[6] + "'");
    m.component = parts[6][0];
    return m;
}

}  // namespace

SimConfig parse_config_text(const std::string& text, const std::string& origin) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(origin, line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"grid", "physics", "noise", "closure",
                                          "time", "init",    "seed"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) parse_fail(origin, line_no, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(origin, line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty()) parse_fail(origin, line_no, "key before any section");

        if (section == "grid") {
            if (key == "nx") cfg.grid.nx = static_cast<int>(to_long(val, origin, line_no));
            else if (key == "ny") cfg.grid.ny = static_cast<int>(to_long(val, origin, line_no));
            else if (key == "nz") cfg.grid.nz = static_cast<int>(to_long(val, origin, line_no));
            else if (key == "Lx") cfg.grid.Lx = to_double(val, origin, line_no);
            else if (key == "Ly") cfg.grid.Ly = to_double(val, origin, line_no);
            else if (key == "h") cfg.grid.h = to_double(val, origin, line_no);
            else parse_fail(origin, line_no, "unknown key '" + key + "' in [grid]");
        } else if (section == "physics") {
            PhysParams& p = cfg.phys;
            if (key == "f") p.f = to_double(val, origin, line_no);
            else if (key == "g") p.g = to_double(val, origin, line_no);
            else if (key == "rho0") p.rho0 = to_double(val, origin, line_no);
            else if (key == "beta_T") p.beta_T = to_double(val, origin, line_no);
            else if (key == "beta_S") p.beta_S = to_double(val, origin, line_no);
            else if (key == "T_r") p.T_r = to_double(val, origin, line_no);
            else if (key == "S_r") p.S_r = to_double(val, origin, line_no);
            else if (key == "mu_v") p.mu_v = to_double(val, origin, line_no);
            else if (key == "nu_v") p.nu_v = to_double(val, origin, line_no);
            else if (key == "mu_T") p.mu_T = to_double(val, origin, line_no);
            else if (key == "nu_T") p.nu_T = to_double(val, origin, line_no);
            else if (key == "mu_S") p.mu_S = to_double(val, origin, line_no);
            else if (key == "nu_S") p.nu_S = to_double(val, origin, line_no);
            else if (key == "alpha_T") p.alpha_T = to_double(val, origin, line_no);
            else parse_fail(origin, line_no, "unknown key '" + key + "' in [physics]");
        } else if (section == "noise") {
            if (key == "upsilon") cfg.upsilon = to_double(val, origin, line_no);
            else if (key == "bhn") cfg.bhn = to_bool(val, origin, line_no);
            else if (key == "mode") cfg.modes.push_back(parse_mode(val, origin, line_no));
            else parse_fail(origin, line_no, "unknown key '" + key + "' in [noise]");
        } else if (section == "closure") {
            if (key == "variant") {
                if (val == "deterministic") cfg.closure = HydroClosure::deterministic;
                else if (val == "strong") cfg.closure = HydroClosure::strong;
                else if (val == "weak-filtered") cfg.closure = HydroClosure::weak_filtered;
                else parse_fail(origin, line_no, "unknown closure variant '" + val + "'");
            } else if (key == "kernel") {
                if (val == "identity") cfg.kernel.kind = FilterKernel::Kind::identity;
                else if (val == "gaussian") cfg.kernel.kind = FilterKernel::Kind::gaussian;
                else if (val == "sharp-cutoff") cfg.kernel.kind = FilterKernel::Kind::sharp_cutoff;
                else parse_fail(origin, line_no, "unknown kernel kind '" + val + "'");
            } else if (key == "length_scale") {
                cfg.kernel.length_scale = to_double(val, origin, line_no);
            } else if (key == "cutoff") {
                cfg.kernel.cutoff = to_double(val, origin, line_no);
            } else if (key == "horizontal_only") {
                cfg.kernel.horizontal_only = to_bool(val, origin, line_no);
            } else {
                parse_fail(origin, line_no, "unknown key '" + key + "' in [closure]");
            }
        } else if (section == "time") {
            if (key == "dt") cfg.dt = to_double(val, origin, line_no);
            else if (key == "t_end") cfg.t_end = to_double(val, origin, line_no);
            else if (key == "output_every")
                cfg.output_every = static_cast<int>(to_long(val, origin, line_no));
            else parse_fail(origin, line_no, "unknown key '" + key + "' in [time]");
        } else if (section == "init") {
            if (key == "preset") cfg.init.name = val;
            else if (key == "velocity") cfg.init.velocity = to_double(val, origin, line_no);
            else if (key == "stratification")
                cfg.init.stratification = to_double(val, origin, line_no);
            else if (key == "mode") cfg.init.mode = static_cast<int>(to_long(val, origin, line_no));
            else parse_fail(origin, line_no, "unknown key '" + key + "' in [init]");
        } else if (section == "seed") {
            if (key == "seed")
                cfg.seed = static_cast<std::uint64_t>(to_long(val, origin, line_no));
            else parse_fail(origin, line_no, "unknown key '" + key + "' in [seed]");
        }
    }

    cfg.validate();
    // band-limit and BHN consistency checks (throws naming the offending mode)
    const Grid grid = make_grid(cfg);
    build_model(cfg, grid);
    return cfg;
}

SimConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

namespace {

constexpr char kMagic[8] = {'L', 'U', 'P', 'E', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

void put_bytes(std::ostream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void get_bytes(std::istream& in, void* p, std::size_t n, const std::string& path) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw std::runtime_error("truncated snapshot file '" + path + "'");
}

void put_array(std::ostream& out, const char* name, const std::vector<double>& data) {
    const std::uint32_t name_len = static_cast<std::uint32_t>(std::strlen(name));
    put_bytes(out, &name_len, 4);
    put_bytes(out, name, name_len);
    const std::uint64_t count = data.size();
    put_bytes(out, &count, 8);
    put_bytes(out, data.data(), count * 8);
}

std::vector<double> get_array(std::istream& in, const char* expect, std::size_t expect_size,
                              const std::string& path) {
    std::uint32_t name_len = 0;
    get_bytes(in, &name_len, 4, path);
    std::string name(name_len, '\0');
    get_bytes(in, name.data(), name_len, path);
    if (name != expect)
        throw std::runtime_error("snapshot '" + path + "': expected array '" + expect +
                                 "', found '" + name + "'");
    std::uint64_t count = 0;
    get_bytes(in, &count, 8, path);
    if (count != expect_size)
        throw std::runtime_error("snapshot '" + path + "': array '" + name + "' has wrong size");
    std::vector<double> data(count);
    get_bytes(in, data.data(), count * 8, path);
    return data;
}

}  // namespace

void write_snapshot(const std::string& path, const State& u) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    const Grid& g = u.grid();
    put_bytes(out, kMagic, 8);
    put_bytes(out, &kVersion, 4);
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(g.nx),
                                   static_cast<std::uint32_t>(g.ny),
                                   static_cast<std::uint32_t>(g.nz)};
    put_bytes(out, dims, 12);
    const double extents[3] = {g.Lx, g.Ly, g.h};
    put_bytes(out, extents, 24);
    put_bytes(out, &u.t, 8);
    const std::int64_t step = u.step_index;
    put_bytes(out, &step, 8);
    put_array(out, "v*_x", u.v.x.data);
    put_array(out, "v*_y", u.v.y.data);
    put_array(out, "T", u.T.data);
    put_array(out, "S", u.S.data);
    put_array(out, "w", vertical_velocity(u.v).data);
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

State read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot file '" + path + "'");
    char magic[8];
    get_bytes(in, magic, 8, path);
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("'" + path + "' is not a snapshot file (bad magic)");
    std::uint32_t version = 0;
    get_bytes(in, &version, 4, path);
    if (version != kVersion)
        throw std::runtime_error("snapshot '" + path + "': unsupported format version " +
                                 std::to_string(version));
    std::uint32_t dims[3];
    get_bytes(in, dims, 12, path);
    double extents[3];
    get_bytes(in, extents, 24, path);
    const Grid g = make_grid(static_cast<int>(dims[0]), static_cast<int>(dims[1]),
                             static_cast<int>(dims[2]), extents[0], extents[1], extents[2]);
    State u(g);
    get_bytes(in, &u.t, 8, path);
    std::int64_t step = 0;
    get_bytes(in, &step, 8, path);
    u.step_index = static_cast<long>(step);
    u.v.x.data = get_array(in, "v*_x", g.size(), path);
    u.v.y.data = get_array(in, "v*_y", g.size(), path);
    u.T.data = get_array(in, "T", g.size(), path);
    u.S.data = get_array(in, "S", g.size(), path);
    get_array(in, "w", g.size(), path);  // diagnosed, not prognostic
    return u;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
    const auto& names = DiagnosticsRecord::field_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out << ',';
        out << names[i];
    }
    out << '\n';
    char buf[64];
    for (const DiagnosticsRecord& r : records) {
        const std::vector<double> vals = r.values();
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
            out << buf;
        }
        out << '\n';
    }
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_diagnostics_csv(out, records);
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
    out << "upsilon,rms_sup_deviation,members_used,members_blown_up\n";
    char buf[64];
    for (const ConvergenceRow& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.upsilon);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.rms_sup_deviation);
        out << buf << ',' << r.members_used << ',' << r.members_blown_up << '\n';
    }
    std::snprintf(buf, sizeof buf, "%.17g", table.fitted_exponent);
    out << "# fitted_exponent," << buf << '\n';
}

}  // namespace lupe
