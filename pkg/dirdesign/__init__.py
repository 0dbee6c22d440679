# dirdesign - Directed block designs toolkit
