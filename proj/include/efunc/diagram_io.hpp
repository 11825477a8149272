#pragma once

// Line formats for structures, enumerations and schedules.
//
// Structure file:
//   language: 1 2 1
//   universe 6
//   total                      (optional)
//   fact 1 (0,1) @0
//   negfact 2 (3) @4
//
// Enumeration file: one `x -> y` per line, x covering [0, N); an optional
// `partial` line marks the target window as not fully covered.
//
// Schedule file: one `element @stage` per line.

#include <iosfwd>
#include <string>
#include <vector>

#include "efunc/diagrams.hpp"

namespace efunc {

StructurePresentation parse_structure(std::istream& in, const std::string& source = "<input>");
StructurePresentation load_structure(const std::string& path);
void write_structure(std::ostream& out, const StructurePresentation& s,
                     const std::vector<std::string>& header = {});

Enumeration parse_enumeration(std::istream& in, const std::string& source = "<input>");
Enumeration load_enumeration(const std::string& path);
void write_enumeration(std::ostream& out, const Enumeration& f);

CESchedule parse_schedule(std::istream& in, const std::string& source = "<input>");
CESchedule load_schedule(const std::string& path);
void write_schedule(std::ostream& out, const CESchedule& schedule);

}  // namespace efunc
