#pragma once

#include "fpm/diagnostics.hpp"
#include "fpm/ecpg.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fpm {

/// Slice anchor: a (line [, column], filename) triple taken from a warning.
/// Without a column every node starting on the line matches.
struct SlicingCriterion {
    std::string file;
    int line = 1;
    std::optional<int> column;
};

enum class SliceDirection { Backward, Forward, Both };
std::string_view to_string(SliceDirection direction);
std::optional<SliceDirection> slice_direction_from_string(std::string_view name);

/// Subset of traversable edge labels (C, D, F, S, V, CFG). AST edges are
/// never traversed; statement structure is handled by the slicer itself.
struct LabelSet {
    unsigned mask = 0;

    static LabelSet of(std::initializer_list<EdgeLabel> labels);
    static LabelSet slicing_default(); // {C, D, F, S, V}
    bool contains(EdgeLabel label) const { return mask & (1u << static_cast<unsigned>(label)); }
    bool subset_of(const LabelSet &other) const { return (mask & ~other.mask) == 0; }
    std::string to_string() const;
};
/// Parse "C,D,F" style lists; unknown or untraversable labels are an error.
std::optional<LabelSet> parse_label_set(std::string_view text);

struct SliceLine {
    int n = 0;
    std::string text;
};
struct SliceFileGroup {
    std::string path;
    std::vector<SliceLine> lines; // strictly increasing line numbers
};

struct Slice {
    std::vector<SlicingCriterion> criteria;
    SliceDirection direction = SliceDirection::Backward;
    bool fallback_used = false;
    std::vector<SliceFileGroup> files; // sorted by path
    std::set<NodeId> node_ids;         // the collected set R

    std::set<int> line_set(const std::string &path) const;
    std::string to_json() const;
};

/// Verbatim access to the original sources a slice is reconstructed from.
class SourceStore {
public:
    virtual ~SourceStore() = default;
    virtual std::optional<std::string> load(const std::string &path) const = 0;
};

class DiskSourceStore : public SourceStore {
public:
    explicit DiskSourceStore(std::string root) : root_(std::move(root)) {}
    std::optional<std::string> load(const std::string &path) const override;

private:
    std::string root_;
};

class MemorySourceStore : public SourceStore {
public:
    explicit MemorySourceStore(std::map<std::string, std::string> files)
        : files_(std::move(files)) {}
    std::optional<std::string> load(const std::string &path) const override;

private:
    std::map<std::string, std::string> files_;
};

struct ResolvedCriteria {
    std::set<NodeId> nodes; // N_C
    bool fallback_used = false;
};

/// Worklist slicing over an eCPG.
class Slicer {
public:
    explicit Slicer(const Ecpg &graph);

    /// Nodes whose location matches the criteria. When nothing matches a
    /// criterion exactly, every node of the enclosing function is used
    /// instead (and fallback_used is set). Throws CriterionOutOfRange for
    /// unknown files or lines beyond both the file and any function.
    ResolvedCriteria resolve_criteria(const std::vector<SlicingCriterion> &criteria) const;

    /// Least fixpoint containing the seeds and closed under traversing edges
    /// whose label is in `labels`: incoming edges backward, outgoing forward,
    /// both for Both. A statement stands for its expression tree, so edges
    /// ending inside an expression count as ending on the statement, and a
    /// hit on an expression node also reaches its enclosing statement. Each
    /// node is enqueued at most once; `pops`, when given, receives the number
    /// of worklist pops (bounded by the node count).
    std::set<NodeId> slice_nodes(const std::set<NodeId> &seeds, SliceDirection direction,
                                 LabelSet labels, size_t *pops = nullptr) const;

    /// Map a node set back to per-file, line-level source text via the node
    /// metadata. Throws SourceUnavailable when a referenced file is missing.
    Slice reconstruct_source_slice(const std::set<NodeId> &nodes,
                                   const std::vector<SlicingCriterion> &criteria,
                                   SliceDirection direction, const SourceStore &sources,
                                   bool fallback_used = false) const;

    /// resolve + slice + reconstruct in one call.
    Slice run(const std::vector<SlicingCriterion> &criteria, SliceDirection direction,
              LabelSet labels, const SourceStore &sources) const;

private:
    const Ecpg &graph_;
    std::map<std::string, std::map<int, std::vector<NodeId>>> by_location_;
    std::map<std::string, int> max_line_;
    std::map<std::string, std::vector<NodeId>> functions_by_file_;
    std::vector<NodeId> parent_;

    void expansion(NodeId id, std::vector<NodeId> &out) const;
    NodeId enclosing_statement(NodeId id) const;
};

} // namespace fpm
