# GBC package