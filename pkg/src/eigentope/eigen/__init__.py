"""Fixed points of words, their spin and systematic word scans."""
