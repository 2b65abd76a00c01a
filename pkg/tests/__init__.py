# Test package for rmwb
