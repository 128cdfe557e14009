#pragma once

#include "fpm/diagnostics.hpp"
#include "fpm/project.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fpm {

/// Directed file reference graph: an edge A -> B means a symbol used in A is
/// defined in B. Self references are dropped.
struct FileReferenceGraph {
    std::vector<std::string> files;           // every parsed file, sorted
    std::vector<std::pair<int, int>> edges;   // deduped indices into files

    int index_of(const std::string &path) const;
    std::vector<std::vector<int>> out_adjacency() const;
};

/// Tarjan SCC partition of the FRG plus its condensation DAG, computed once
/// per project and reused by every warning.
struct SccIndex {
    std::vector<int> component_of;                // file index -> scc id
    std::vector<std::vector<int>> members;        // scc id -> file indices
    std::vector<std::pair<int, int>> condensation; // deduped scc edges

    std::vector<std::vector<int>> cond_adjacency() const;
    /// Topological order of the condensation; empty only for empty graphs.
    /// A cycle (impossible by construction) would be a hard error.
    std::vector<int> topological_order() const;
};

FileReferenceGraph build_frg(const SymbolTable &symbols, const std::vector<Unit> &units,
                             const NodeTable &nodes);

SccIndex compute_scc(const FileReferenceGraph &frg);

struct FarfStats {
    size_t scc_pops = 0; // bounded by the number of SCCs per query
};

/// Every file the given files depend on, transitively, including themselves:
/// reachability over the condensation starting from the seeds' SCCs. Output
/// is sorted. Throws UnknownFile for files outside the graph.
std::vector<std::string> farf(const FileReferenceGraph &frg, const SccIndex &scc,
                              const std::vector<std::string> &files,
                              FarfStats *stats = nullptr);

// --- one-time-analysis cache --------------------------------------------------

struct FrgCache {
    std::string hash; // content hash of all project sources
    FileReferenceGraph frg;
    SccIndex scc;
};

std::string project_content_hash(const std::vector<SourceFile> &files);
std::string frg_cache_to_json(const FrgCache &cache);
FrgCache frg_cache_from_json(const std::string &bytes); // SchemaError on malformed input

} // namespace fpm
