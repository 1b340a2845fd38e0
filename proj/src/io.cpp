#include "eulerlab/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace eulerlab::io {

namespace {

constexpr char kMagic[4] = {'E', 'U', 'L', 'F'};

template <typename T>
void write_raw(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("truncated field file");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << std::setprecision(17);
  return os;
}

}  // namespace

void write_field_binary(const std::filesystem::path& path, const Field2D& f,
                        double t) {
  auto os = open_out(path, true);
  os.write(kMagic, 4);
  write_raw<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.nx()));
  write_raw<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.ny()));
  write_raw<double>(os, f.grid.lx());
  write_raw<double>(os, f.grid.ly());
  write_raw<double>(os, t);
  for (int i = 0; i < f.grid.nx(); ++i)
    for (int j = 0; j < f.grid.ny(); ++j) write_raw<double>(os, f.values(i, j));
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::pair<Field2D, double> read_field_binary(
    const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("'" + path.string() + "' is not a field dump");
  const auto nx = read_raw<std::uint32_t>(is);
  const auto ny = read_raw<std::uint32_t>(is);
  const double lx = read_raw<double>(is);
  const double ly = read_raw<double>(is);
  const double t = read_raw<double>(is);
  Field2D f(Grid2D(static_cast<int>(nx), static_cast<int>(ny), lx, ly));
  for (std::uint32_t i = 0; i < nx; ++i)
    for (std::uint32_t j = 0; j < ny; ++j)
      f.values(static_cast<int>(i), static_cast<int>(j)) =
          read_raw<double>(is);
  return {std::move(f), t};
}

void write_field_csv(const std::filesystem::path& path, const Field2D& f) {
  auto os = open_out(path, false);
  os << "x,y,value\n";
  for (int i = 0; i < f.grid.nx(); ++i)
    for (int j = 0; j < f.grid.ny(); ++j)
      os << f.grid.x(i) << ',' << f.grid.y(j) << ',' << f.values(i, j) << '\n';
}

void write_conservation_csv(const std::filesystem::path& path,
                            const ConservationLog& log) {
  auto os = open_out(path, false);
  os << "t,J0,K0,Cp,Cm\n";
  for (std::size_t n = 0; n < log.t.size(); ++n)
    os << log.t[n] << ',' << log.j0[n] << ',' << log.k0[n] << ',' << log.cp[n]
       << ',' << log.cm[n] << '\n';
}

ConservationLog read_conservation_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(is, line) || line != "t,J0,K0,Cp,Cm")
    throw IoError("'" + path.string() + "' is not a conservation log");
  ConservationLog log;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string item;
    std::vector<double> row;
    while (std::getline(ss, item, ',')) row.push_back(std::stod(item));
    if (row.size() != 5) throw IoError("malformed conservation row");
    log.t.push_back(row[0]);
    log.j0.push_back(row[1]);
    log.k0.push_back(row[2]);
    log.cp.push_back(row[3]);
    log.cm.push_back(row[4]);
  }
  return log;
}

void write_profile_csv(const std::filesystem::path& path, const Profile1D& p,
                       const std::string& var_name) {
  auto os = open_out(path, false);
  os << var_name << ",value\n";
  for (int i = 0; i < p.grid.n; ++i)
    os << p.grid.node(i) << ',' << p.values[i] << '\n';
}

nlohmann::json to_json(const ResidualReport& report) {
  nlohmann::json doc;
  doc["form"] = report.form;
  if (!report.generator.empty()) doc["generator"] = report.generator;
  doc["checked"] = report.checked;
  doc["samples"] = report.samples;
  doc["tol"] = report.tol;
  doc["equations"] = nlohmann::json::array();
  for (const auto& eq : report.equations) {
    doc["equations"].push_back(
        {{"name", eq.name},
         {"linf", eq.linf},
         {"l2", eq.l2},
         {"worst_point",
          {eq.worst_point[0], eq.worst_point[1], eq.worst_point[2]}}});
  }
  doc["pass"] = report.pass;
  return doc;
}

void write_trace(const std::filesystem::path& dir, const Trajectory& traj,
                 const ConservationLog& log) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["nx"] = traj.grid.nx();
  manifest["ny"] = traj.grid.ny();
  manifest["Lx"] = traj.grid.lx();
  manifest["Ly"] = traj.grid.ly();
  manifest["dt"] = traj.dt;
  manifest["dealias"] = traj.dealias;
  manifest["truncated"] = traj.truncated;
  manifest["times"] = traj.times;
  manifest["snapshots"] = nlohmann::json::array();
  for (std::size_t n = 0; n < traj.size(); ++n) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%05zu", n);
    const std::string gp_file = std::string(name) + "_gp.eulf";
    const std::string gm_file = std::string(name) + "_gm.eulf";
    write_field_binary(dir / gp_file, traj.gp[n], traj.times[n]);
    write_field_binary(dir / gm_file, traj.gm[n], traj.times[n]);
    manifest["snapshots"].push_back({{"t", traj.times[n]},
                                     {"gp", gp_file},
                                     {"gm", gm_file}});
  }
  std::ofstream os(dir / "trace.json");
  if (!os) throw IoError("cannot write trace manifest");
  os << manifest.dump(2) << '\n';
  write_conservation_csv(dir / "conservation.csv", log);
}

Trajectory read_trace(const std::filesystem::path& dir) {
  std::ifstream is(dir / "trace.json");
  if (!is) throw IoError("no trace.json in '" + dir.string() + "'");
  nlohmann::json manifest;
  is >> manifest;
  Trajectory traj;
  traj.grid = Grid2D(manifest.at("nx").get<int>(), manifest.at("ny").get<int>(),
                     manifest.at("Lx").get<double>(),
                     manifest.at("Ly").get<double>());
  traj.dt = manifest.at("dt").get<double>();
  traj.dealias = manifest.value("dealias", true);
  traj.truncated = manifest.value("truncated", false);
  for (const auto& snap : manifest.at("snapshots")) {
    auto [gp, t_gp] = read_field_binary(dir / snap.at("gp").get<std::string>());
    auto [gm, t_gm] = read_field_binary(dir / snap.at("gm").get<std::string>());
    if (t_gp != t_gm) throw IoError("snapshot time mismatch in trace");
    traj.times.push_back(t_gp);
    traj.gp.push_back(std::move(gp));
    traj.gm.push_back(std::move(gm));
  }
  return traj;
}

}  // namespace eulerlab::io
