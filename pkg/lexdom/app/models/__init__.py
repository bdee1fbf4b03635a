# Graph, factor invariant and report models
