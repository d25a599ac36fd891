# Test package for fanobound
