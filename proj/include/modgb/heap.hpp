#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "modgb/monomial.hpp"

namespace modgb {

/// Max-heap over distinct monomials in degrevlex. Pushing a key that is
/// already present chains the payload onto the existing node instead of
/// growing the heap, so equal keys are merged before any coefficient
/// arithmetic and every heap operation stays O(log #distinct-keys).
template <class Payload>
class ChainedMonoHeap {
public:
    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }

    const Monomial& top() const { return nodes_.front().key; }

    void push(const Monomial& key, Payload payload) {
        auto it = index_.find(key);
        if (it != index_.end()) {
            Bucket& b = buckets_[it->second];
            links_.push_back({std::move(payload), b.head});
            b.head = static_cast<std::uint32_t>(links_.size() - 1);
            return;
        }
        links_.push_back({std::move(payload), npos});
        const std::uint32_t bucket = alloc_bucket(static_cast<std::uint32_t>(links_.size() - 1));
        index_.emplace(key, bucket);
        nodes_.push_back({key, bucket});
        sift_up(nodes_.size() - 1);
    }

    /// Removes the maximal key; its chained payloads are appended to `out`
    /// in reverse push order.
    Monomial pop(std::vector<Payload>& out) {
        Node top_node = nodes_.front();
        index_.erase(top_node.key);
        for (std::uint32_t l = buckets_[top_node.bucket].head; l != npos; l = links_[l].next)
            out.push_back(std::move(links_[l].payload));
        free_bucket(top_node.bucket);
        nodes_.front() = nodes_.back();
        nodes_.pop_back();
        if (!nodes_.empty()) sift_down(0);
        if (nodes_.empty()) links_.clear();
        return top_node.key;
    }

private:
    static constexpr std::uint32_t npos = 0xffffffffu;

    struct Link {
        Payload payload;
        std::uint32_t next;
    };
    struct Bucket {
        std::uint32_t head;
        std::uint32_t next_free;
    };
    struct Node {
        Monomial key;
        std::uint32_t bucket;
    };

    std::uint32_t alloc_bucket(std::uint32_t head) {
        if (free_bucket_ != npos) {
            const std::uint32_t b = free_bucket_;
            free_bucket_ = buckets_[b].next_free;
            buckets_[b].head = head;
            return b;
        }
        buckets_.push_back({head, npos});
        return static_cast<std::uint32_t>(buckets_.size() - 1);
    }

    void free_bucket(std::uint32_t b) {
        buckets_[b].next_free = free_bucket_;
        free_bucket_ = b;
    }

    void sift_up(std::size_t pos) {
        Node moving = nodes_[pos];
        while (pos > 0) {
            const std::size_t parent = (pos - 1) / 2;
            if (!degrevlex_less(nodes_[parent].key, moving.key)) break;
            nodes_[pos] = nodes_[parent];
            pos = parent;
        }
        nodes_[pos] = moving;
    }

    void sift_down(std::size_t pos) {
        const std::size_t n = nodes_.size();
        Node moving = nodes_[pos];
        for (;;) {
            std::size_t child = 2 * pos + 1;
            if (child >= n) break;
            if (child + 1 < n && degrevlex_less(nodes_[child].key, nodes_[child + 1].key))
                ++child;
            if (!degrevlex_less(moving.key, nodes_[child].key)) break;
            nodes_[pos] = nodes_[child];
            pos = child;
        }
        nodes_[pos] = moving;
    }

    std::vector<Node> nodes_;
    std::vector<Bucket> buckets_;
    std::uint32_t free_bucket_ = npos;
    std::vector<Link> links_;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index_;
};

}  // namespace modgb
