#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"

namespace hol {

// Orders n_1 <= ... <= n_k of the branch points; a point of order n has local model z -> z^(n+1).
class BranchData {
public:
    BranchData() = default;
    BranchData(std::vector<int> orders) : n_(std::move(orders))
    {
        for (int x : n_)
            if (x < 1) throw InputError("branch orders must be positive, got " + std::to_string(x));
        std::sort(n_.begin(), n_.end());
    }
    BranchData(std::initializer_list<int> orders) : BranchData(std::vector<int>(orders)) {}

    // Repeated ones: the generic data of total s.
    static BranchData ones(int s) { return BranchData(std::vector<int>(std::max(s, 0), 1)); }

    // "1,1,2" or "" for the empty data.
    static BranchData parse(const std::string& s) { return BranchData(parse_list(s)); }

    // The comma-separated entries in their given order.
    static std::vector<int> parse_list(const std::string& s)
    {
        std::vector<int> v;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.find_first_not_of(" \t") == std::string::npos) continue;
            try {
                std::size_t used = 0;
                int x = std::stoi(item, &used);
                if (item.find_first_not_of(" \t", used) != std::string::npos) throw InputError("");
                v.push_back(x);
            } catch (const std::exception&) {
                throw InputError("bad branch order '" + item + "'");
            }
        }
        return v;
    }

    const std::vector<int>& orders() const { return n_; }
    int k() const { return int(n_.size()); }
    int total() const { return std::accumulate(n_.begin(), n_.end(), 0); }
    int max() const { return n_.empty() ? 0 : n_.back(); }
    bool empty() const { return n_.empty(); }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < n_.size(); ++i) s += (i ? "," : "") + std::to_string(n_[i]);
        return s + ")";
    }

    friend bool operator==(const BranchData&, const BranchData&) = default;
    friend std::ostream& operator<<(std::ostream& os, const BranchData& bd) { return os << bd.str(); }

private:
    std::vector<int> n_;
};

} // namespace hol
