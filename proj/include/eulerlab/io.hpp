#ifndef EULERLAB_IO_HPP
#define EULERLAB_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "eulerlab/fieldlab.hpp"
#include "eulerlab/model.hpp"
#include "eulerlab/reduced.hpp"

namespace eulerlab::io {

/// Raw field dump: magic "EULF", u32 nx, u32 ny, f64 Lx, f64 Ly, f64 t, then
/// nx*ny little-endian f64 row-major (x index outer, y index inner).
void write_field_binary(const std::filesystem::path& path, const Field2D& f,
                        double t);
std::pair<Field2D, double> read_field_binary(const std::filesystem::path& path);

/// CSV dump: header "x,y,value", one node per row.
void write_field_csv(const std::filesystem::path& path, const Field2D& f);

/// CSV with header "t,J0,K0,Cp,Cm".
void write_conservation_csv(const std::filesystem::path& path,
                            const ConservationLog& log);
ConservationLog read_conservation_csv(const std::filesystem::path& path);

/// CSV with header "<var>,value", one node per row (var is "s" or "r").
void write_profile_csv(const std::filesystem::path& path, const Profile1D& p,
                       const std::string& var_name);

/// Reports as JSON documents:
/// {form, [generator], checked, samples, tol, equations: [{name, linf, l2,
///  worst_point: [x,y,t]}], pass}.
nlohmann::json to_json(const ResidualReport& report);

/// Trajectory directory: trace.json manifest + one EULF pair per snapshot
/// plus the conservation CSV.
void write_trace(const std::filesystem::path& dir, const Trajectory& traj,
                 const ConservationLog& log);
Trajectory read_trace(const std::filesystem::path& dir);

}  // namespace eulerlab::io

#endif
