"""Report rendering, sampled-function IO and command-line tools."""
