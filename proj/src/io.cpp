#include "chl/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chl::io {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // '\n' only, byte-stable artifacts
    if (!out) throw Error(errc::analysis, "cannot open output file: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::analysis, "cannot open input file: " + path);
    return in;
}

void stamp(std::ofstream& out, const char* kind, const ArtifactMeta& meta) {
    out << "# chloridesim " << kind << " v1\n";
    out << "# version=" << kVersion << " config_hash=" << meta.config_hash_hex
        << " seed=" << meta.seed << "\n";
}

double parse_field_double(const std::string& tok, const std::string& path) {
    try {
        return std::stod(tok);
    } catch (const std::exception&) {
        throw Error(errc::analysis, "malformed number '" + tok + "' in " + path);
    }
}

} // namespace

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

void write_mesostructure(const std::string& path, const Mesostructure& meso,
                         const ArtifactMeta& meta) {
    auto out = open_out(path);
    stamp(out, "mesostructure", meta);
    out << "# domain_mm " << fmt(meso.domain.width_mm) << ' ' << fmt(meso.domain.height_mm) << "\n";
    out << "# itz_width_mm " << fmt(meso.itz_width_mm) << "\n";
    out << "# target_fraction " << fmt(meso.target_area_fraction) << " achieved_fraction "
        << fmt(meso.achieved_area_fraction) << "\n";
    // 2D non-overlap packing cannot reach the CT-measured 54.03% volume
    // fraction; the configured target is the planar stand-in.
    out << "# ct_volume_fraction_reference 0.5403\n";
    for (const auto& poly : meso.aggregates) {
        out << "polygon " << poly.vertices.size();
        for (const auto& v : poly.vertices) out << ' ' << fmt(v.x) << ' ' << fmt(v.y);
        const auto& c = poly.circumscribed;
        out << " circle " << fmt(c.center.x) << ' ' << fmt(c.center.y) << ' ' << fmt(c.radius_mm)
            << "\n";
    }
    if (meso.duct) {
        out << "duct " << fmt(meso.duct->center.x) << ' ' << fmt(meso.duct->center.y) << ' '
            << fmt(meso.duct->diameter_mm) << "\n";
    }
}

void write_material_grid_csv(const std::string& path, const MaterialGrid& grid,
                             const ArtifactMeta& meta) {
    auto out = open_out(path);
    stamp(out, "material_grid", meta);
    out << "# nx=" << grid.nx << " ny=" << grid.ny << " h_mm=" << fmt(grid.h_mm) << "\n";
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            if (i) out << ',';
            out << static_cast<int>(grid.at(i, j));
        }
        out << "\n";
    }
}

void write_field_csv(const std::string& path, const ConcentrationField& field,
                     const ArtifactMeta& meta) {
    const MaterialGrid& g = field.grid;
    auto out = open_out(path);
    stamp(out, "field", meta);
    out << "# t_years=" << fmt(field.time_years) << " nx=" << g.nx << " ny=" << g.ny
        << " h_mm=" << fmt(g.h_mm) << "\n";
    out << "x_mm,y_mm,material,concentration_percent\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            out << fmt(g.cell_x(i)) << ',' << fmt(g.cell_depth(j)) << ','
                << static_cast<int>(g.at(i, j)) << ',' << fmt(field.at(i, j)) << "\n";
        }
    }
}

ConcentrationField read_field_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    int nx = -1, ny = -1;
    double h = 0.0, t = 0.0;
    ConcentrationField field;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string tok;
            while (is >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "t_years") t = parse_field_double(val, path);
                else if (key == "nx") nx = static_cast<int>(parse_field_double(val, path));
                else if (key == "ny") ny = static_cast<int>(parse_field_double(val, path));
                else if (key == "h_mm") h = parse_field_double(val, path);
            }
            continue;
        }
        if (line.rfind("x_mm", 0) == 0) break; // column header
    }
    if (nx <= 0 || ny <= 0 || h <= 0.0)
        throw Error(errc::analysis, "field file lacks nx/ny/h metadata: " + path);

    field.grid.nx = nx;
    field.grid.ny = ny;
    field.grid.h_mm = h;
    field.grid.domain = {nx * h, ny * h};
    field.grid.codes.assign(static_cast<std::size_t>(nx) * ny, Material::mortar);
    field.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    field.time_years = t;

    std::size_t row = 0;
    const std::size_t total = static_cast<std::size_t>(nx) * ny;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (row >= total) throw Error(errc::analysis, "too many data rows in " + path);
        std::istringstream is(line);
        std::string tok;
        double vals[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(is, tok, ',')) throw Error(errc::analysis, "short row in " + path);
            vals[k] = parse_field_double(tok, path);
        }
        const int i = static_cast<int>(std::floor(vals[0] / h));
        const int j = static_cast<int>(std::floor(vals[1] / h));
        if (i < 0 || i >= nx || j < 0 || j >= ny)
            throw Error(errc::analysis, "cell coordinates outside grid in " + path);
        const std::size_t idx = field.grid.index(i, j);
        field.grid.codes[idx] = static_cast<Material>(static_cast<int>(vals[2]));
        field.values[idx] = vals[3];
        ++row;
    }
    if (row != total) throw Error(errc::analysis, "missing data rows in " + path);
    return field;
}

void write_field_vtk(const std::string& path, const ConcentrationField& field,
                     const ArtifactMeta& meta) {
    const MaterialGrid& g = field.grid;
    auto out = open_out(path);
    out << "# vtk DataFile Version 3.0\n";
    out << "chloridesim field t=" << fmt(field.time_years) << " config=" << meta.config_hash_hex
        << " seed=" << meta.seed << "\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << g.nx + 1 << ' ' << g.ny + 1 << " 1\n";
    out << "ORIGIN 0 0 0\n";
    out << "SPACING " << fmt(g.h_mm) << ' ' << fmt(g.h_mm) << " 1\n";
    out << "CELL_DATA " << static_cast<std::size_t>(g.nx) * g.ny << "\n";
    out << "SCALARS concentration_percent double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out << fmt(field.at(i, j)) << "\n";
    out << "SCALARS material int 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out << static_cast<int>(g.at(i, j)) << "\n";
}

void write_depth_profile_csv(const std::string& path, const DepthProfile& profile,
                             const ArtifactMeta& meta) {
    auto out = open_out(path);
    stamp(out, "depth_profile", meta);
    out << "# t_years=" << fmt(profile.time_years) << "\n";
    if (!profile.skipped_rows.empty()) {
        out << "# skipped_rows=";
        for (std::size_t k = 0; k < profile.skipped_rows.size(); ++k) {
            if (k) out << ' ';
            out << profile.skipped_rows[k];
        }
        out << "\n";
    }
    out << "depth_mm,concentration_percent\n";
    for (std::size_t k = 0; k < profile.depth_mm.size(); ++k)
        out << fmt(profile.depth_mm[k]) << ',' << fmt(profile.value_percent[k]) << "\n";
}

namespace {

std::vector<std::vector<double>> read_csv_rows(const std::string& path, std::size_t min_cols) {
    auto in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        // skip a non-numeric header row
        const char c = line[0];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.'))
            continue;
        std::istringstream is(line);
        std::string tok;
        std::vector<double> row;
        while (std::getline(is, tok, ',')) row.push_back(parse_field_double(tok, path));
        if (row.size() < min_cols)
            throw Error(errc::analysis, "row with too few columns in " + path);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

MeasuredProfile read_measured_csv(const std::string& path) {
    MeasuredProfile prof;
    for (const auto& row : read_csv_rows(path, 2)) prof.push_back({row[0], row[1]});
    std::sort(prof.begin(), prof.end(),
              [](const MeasuredPoint& a, const MeasuredPoint& b) { return a.depth_mm < b.depth_mm; });
    return prof;
}

MeasuredProfile read_titration_csv(const std::string& path) {
    MeasuredProfile prof;
    for (const auto& row : read_csv_rows(path, 6)) {
        TitrationRecord rec;
        rec.depth_mm = row[0];
        rec.titer_mg_per_ml = row[1];
        rec.titrant_volume_ml = row[2];
        rec.water_volume_ml = row[3];
        rec.extract_volume_ml = row[4];
        rec.powder_mass_g = row[5];
        prof.push_back({rec.depth_mm, titration_concentration(rec)});
    }
    std::sort(prof.begin(), prof.end(),
              [](const MeasuredPoint& a, const MeasuredPoint& b) { return a.depth_mm < b.depth_mm; });
    return prof;
}

} // namespace chl::io
