"""hhb package — High-dimensional Hoffman bounds for weighted hypergraphs."""
