#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dset/design.hpp"
#include "dset/families.hpp"
#include "dset/group.hpp"
#include "dset/transfer.hpp"

namespace dset::io {

// Line-oriented text records. Groups are written recursively (an extension
// embeds its base block) followed by one comma-separated coordinate tuple per
// element; designs reference their group file by name and list member
// indices. Reading an extension rebuilds it from its generators and checks
// that the enumeration matches the stored tuples.
void write_group(std::ostream& out, const Group& g);
GroupPtr read_group(std::istream& in);

void write_design(std::ostream& out, const DesignSet& d, const std::string& group_file);
// Returns the design and stores the referenced group file name.
DesignSet read_design(std::istream& in, const GroupPtr& group);
std::string design_group_file(std::istream& in);

void write_instance(std::ostream& out, const TransferInstance& inst, const std::string& group_file,
                    const std::string& design_file);
TransferInstance read_instance(const std::filesystem::path& path);

void write_report(std::ostream& out, const TransferReport& r, const std::vector<Claim>& claims);

// Cayley graph x -> d x. Directed when D is not inverse-closed; otherwise
// every edge appears once.
void export_edges(std::ostream& out, const DesignSet& d);
void export_dot(std::ostream& out, const DesignSet& d);

GroupPtr load_group(const std::filesystem::path& path);
DesignSet load_design(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dset::io
